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

#ifndef CLTCHECK_SCENARIO_HPP_
#define CLTCHECK_SCENARIO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cltcheck/conditions.hpp"
#include "cltcheck/montecarlo.hpp"
#include "cltcheck/sequence.hpp"

namespace clt {

class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A declarative study. Output paths are relative to the run's output
// directory unless absolute; empty means "<fixture>_<role>.<ext>".
struct Scenario {
  std::string fixture;
  StudyConfig study;
  std::string alpha_csv;
  std::string report_csv;
  std::string report_json;
  std::string summary;
};

// Flat `key = value` lines; `#` starts a comment. Values are numbers,
// bare or double-quoted strings, or bracketed comma-separated lists.
// Throws ScenarioParseError with a 1-based line and column.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// What the central limit theorem predicts for the sequence, given the
// hypothesis checks. Pure; the text follows "CLT expected: ".
std::string clt_expectation(Singularity singularity, UniformConvergence uniform,
                            VarianceTrend trend);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<unsigned> workers;
};

struct ScenarioOutcome {
  AlphaProfile profile;
  ConvergenceReport report;
  std::string expectation;
  std::string summary;
  std::vector<std::filesystem::path> artifacts;
};

// Runs conditions and the Monte Carlo study, then writes the alpha CSV,
// report CSV and JSON, and the text summary.
ScenarioOutcome run_scenario(const Scenario& scenario, const RunOptions& options);

std::string summarize(const RandomSequence& seq, const AlphaProfile& profile,
                      const ConvergenceReport& report);

}  // namespace clt

#endif  // CLTCHECK_SCENARIO_HPP_
