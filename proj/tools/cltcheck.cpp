// Copyright 2026 The cltcheck Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: `cltcheck run <scenario>` and `cltcheck list-fixtures`.
//
// Exit codes: 0 success, 2 command-line or scenario parse error, 3 unknown
// fixture, 4 numeric error while running, 1 anything else (e.g. I/O).

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cltcheck/errors.hpp"
#include "cltcheck/scenario.hpp"
#include "cltcheck/sequence.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitUnknownFixture = 3;
constexpr int kExitNumeric = 4;

void list_fixtures(std::ostream& out) {
  for (const auto& info : clt::fixture_catalog()) {
    out << std::left << std::setw(20) << info.name << "  " << info.regime << "\n";
  }
}

int run(const std::string& scenario_path, const clt::RunOptions& options, bool quiet) {
  clt::Scenario scenario;
  try {
    scenario = clt::load_scenario(scenario_path);
  } catch (const clt::ScenarioParseError& e) {
    std::cerr << scenario_path << ":" << e.line() << ":" << e.column() << ": "
              << e.what() << "\n";
    return kExitParse;
  }
  try {
    const auto outcome = clt::run_scenario(scenario, options);
    if (!quiet) {
      std::cout << outcome.summary;
      for (const auto& path : outcome.artifacts) {
        std::cout << "wrote " << path.string() << "\n";
      }
    }
  } catch (const clt::LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnknownFixture;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::logic_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central limit theorem hypothesis checks and Monte Carlo studies"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<unsigned> workers;
  std::string out_dir = ".";
  bool quiet = false;
  app.add_option("--seed", seed, "Root seed (overrides the scenario)");
  app.add_option("--out", out_dir, "Output directory for reports");
  app.add_option("--samples", samples, "Samples per n (overrides the scenario)")
      ->check(CLI::Range(std::size_t{100}, std::numeric_limits<std::size_t>::max()));
  app.add_option("--workers", workers, "Worker threads (0 = all cores)");
  app.add_flag("--quiet", quiet, "Do not print the summary");

  std::string scenario_path;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
  run_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
  run_cmd->fallthrough();
  auto* list_cmd = app.add_subcommand("list-fixtures", "List the fixture registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (list_cmd->parsed()) {
    list_fixtures(std::cout);
    return 0;
  }
  clt::RunOptions options;
  options.out_dir = out_dir;
  options.seed = seed;
  options.samples = samples;
  options.workers = workers;
  return run(scenario_path, options, quiet);
}
