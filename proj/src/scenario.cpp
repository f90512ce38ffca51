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

#include "cltcheck/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "cltcheck/errors.hpp"
#include "cltcheck/report_io.hpp"

namespace clt {

ScenarioParseError::ScenarioParseError(std::size_t line, std::size_t column,
                                       const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t column = 1;  // 1-based
  bool quoted = false;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Trims [begin, end) in place; columns are 0-based offsets into the line.
void trim(std::string_view line, std::size_t& begin, std::size_t& end) {
  while (begin < end && is_space(line[begin])) ++begin;
  while (end > begin && is_space(line[end - 1])) --end;
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t number) : line_(line), number_(number) {}

  [[noreturn]] void fail(std::size_t offset, const std::string& what) const {
    throw ScenarioParseError(number_, offset + 1, what);
  }

  Token scalar(std::size_t begin, std::size_t end) const {
    trim(line_, begin, end);
    if (begin == end) {
      fail(begin, "expected a value");
    }
    Token token;
    token.column = begin + 1;
    if (line_[begin] == '"') {
      if (end - begin < 2 || line_[end - 1] != '"') {
        fail(begin, "unterminated string");
      }
      token.text = std::string(line_.substr(begin + 1, end - begin - 2));
      token.quoted = true;
      if (token.text.find('"') != std::string::npos) {
        fail(begin, "embedded quote in string");
      }
      return token;
    }
    token.text = std::string(line_.substr(begin, end - begin));
    for (std::size_t i = 0; i < token.text.size(); ++i) {
      const char c = token.text[i];
      if (is_space(c) || c == '[' || c == ']' || c == ',' || c == '"') {
        fail(begin + i, std::string("unexpected character '") + c + "'");
      }
    }
    return token;
  }

  std::vector<Token> list(std::size_t begin, std::size_t end) const {
    trim(line_, begin, end);
    if (line_[end - 1] != ']') {
      fail(end - 1, "expected ']' to close the list");
    }
    std::vector<Token> items;
    std::size_t cursor = begin + 1;
    const std::size_t close = end - 1;
    bool empty = true;
    for (std::size_t i = cursor; i < close; ++i) {
      if (!is_space(line_[i])) empty = false;
    }
    if (empty) {
      return items;
    }
    while (true) {
      std::size_t comma = line_.find(',', cursor);
      if (comma == std::string_view::npos || comma > close) comma = close;
      items.push_back(scalar(cursor, comma));
      if (comma == close) break;
      cursor = comma + 1;
    }
    return items;
  }

 private:
  std::string_view line_;
  std::size_t number_;
};

struct Entry {
  std::size_t line = 0;
  std::size_t key_column = 0;
  bool is_list = false;
  std::vector<Token> values;
};

[[noreturn]] void fail_at(const Entry& e, const Token& t, const std::string& what) {
  throw ScenarioParseError(e.line, t.column, what);
}

std::uint64_t to_unsigned(const Entry& e, const Token& t) {
  if (t.quoted) fail_at(e, t, "expected a number, got a string");
  std::uint64_t value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc() && ptr == last) {
    return value;
  }
  double real = 0.0;
  auto [rptr, rec] = std::from_chars(first, last, real);
  if (rec != std::errc() || rptr != last) {
    fail_at(e, t, "expected a nonnegative integer, got '" + t.text + "'");
  }
  if (!(real >= 0.0) || real != std::floor(real) || real > 9007199254740992.0) {
    fail_at(e, t, "expected a nonnegative integer, got '" + t.text + "'");
  }
  return static_cast<std::uint64_t>(real);
}

double to_real(const Entry& e, const Token& t) {
  if (t.quoted) fail_at(e, t, "expected a number, got a string");
  double value = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    fail_at(e, t, "expected a real number, got '" + t.text + "'");
  }
  return value;
}

const Token& single(const Entry& e, const std::string& key) {
  if (e.is_list || e.values.size() != 1) {
    throw ScenarioParseError(e.line, e.key_column, "'" + key + "' takes a single value");
  }
  return e.values.front();
}

void require_list(const Entry& e, const std::string& key) {
  if (!e.is_list) {
    throw ScenarioParseError(e.line, e.key_column,
                             "'" + key + "' takes a bracketed list");
  }
  if (e.values.empty()) {
    throw ScenarioParseError(e.line, e.key_column, "'" + key + "' must not be empty");
  }
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario scenario;
  std::set<std::string> seen;
  bool have_fixture = false;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    const std::string_view line = text.substr(start, stop - start);
    ++line_number;
    start = stop + 1;

    // Strip comments outside quotes.
    std::size_t end = line.size();
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quotes = !in_quotes;
      if (line[i] == '#' && !in_quotes) {
        end = i;
        break;
      }
    }
    std::size_t begin = 0;
    trim(line, begin, end);
    if (begin == end) {
      if (stop == text.size()) break;
      continue;
    }
    const LineParser parser(line, line_number);
    const std::size_t eq = line.find('=', begin);
    if (eq == std::string_view::npos || eq >= end) {
      parser.fail(begin, "expected 'key = value'");
    }
    std::size_t key_begin = begin;
    std::size_t key_end = eq;
    trim(line, key_begin, key_end);
    if (key_begin == key_end) {
      parser.fail(begin, "missing key before '='");
    }
    const std::string key(line.substr(key_begin, key_end - key_begin));
    for (std::size_t i = 0; i < key.size(); ++i) {
      const char c = key[i];
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
        parser.fail(key_begin + i, "invalid character in key '" + key + "'");
      }
    }

    Entry entry;
    entry.line = line_number;
    entry.key_column = key_begin + 1;
    std::size_t value_begin = eq + 1;
    std::size_t value_end = end;
    trim(line, value_begin, value_end);
    if (value_begin == value_end) {
      parser.fail(eq + 1, "missing value for '" + key + "'");
    }
    if (line[value_begin] == '[') {
      entry.is_list = true;
      entry.values = parser.list(value_begin, value_end);
    } else {
      entry.values.push_back(parser.scalar(value_begin, value_end));
    }

    if (!seen.insert(key).second) {
      parser.fail(key_begin, "duplicate key '" + key + "'");
    }

    StudyConfig& study = scenario.study;
    if (key == "fixture") {
      scenario.fixture = single(entry, key).text;
      have_fixture = true;
    } else if (key == "n_grid") {
      require_list(entry, key);
      study.n_grid.clear();
      for (const auto& t : entry.values) {
        const auto n = to_unsigned(entry, t);
        if (n == 0) fail_at(entry, t, "n_grid entries must be >= 1");
        study.n_grid.push_back(static_cast<std::size_t>(n));
      }
    } else if (key == "samples") {
      const auto& t = single(entry, key);
      study.samples = static_cast<std::size_t>(to_unsigned(entry, t));
      if (study.samples < 100) fail_at(entry, t, "samples must be >= 100");
    } else if (key == "eps") {
      const auto& t = single(entry, key);
      study.eps = to_real(entry, t);
      if (!(study.eps > 0.0)) fail_at(entry, t, "eps must be positive");
    } else if (key == "seed") {
      study.root_seed = to_unsigned(entry, single(entry, key));
    } else if (key == "s_grid") {
      require_list(entry, key);
      study.s_grid.clear();
      for (const auto& t : entry.values) {
        const double s = to_real(entry, t);
        if (s < 0.0) fail_at(entry, t, "s_grid entries must be >= 0");
        if (!study.s_grid.empty() && !(s > study.s_grid.back())) {
          fail_at(entry, t, "s_grid must be strictly increasing");
        }
        study.s_grid.push_back(s);
      }
    } else if (key == "alpha_prefix") {
      const auto& t = single(entry, key);
      study.alpha_prefix = static_cast<std::size_t>(to_unsigned(entry, t));
      if (study.alpha_prefix == 0) fail_at(entry, t, "alpha_prefix must be >= 1");
    } else if (key == "tolerance") {
      const auto& t = single(entry, key);
      study.tolerance = to_real(entry, t);
      if (!(study.tolerance > 0.0)) fail_at(entry, t, "tolerance must be positive");
    } else if (key == "workers") {
      study.workers = static_cast<unsigned>(to_unsigned(entry, single(entry, key)));
    } else if (key == "alpha_csv") {
      scenario.alpha_csv = single(entry, key).text;
    } else if (key == "report_csv") {
      scenario.report_csv = single(entry, key).text;
    } else if (key == "report_json") {
      scenario.report_json = single(entry, key).text;
    } else if (key == "summary") {
      scenario.summary = single(entry, key).text;
    } else {
      parser.fail(key_begin, "unknown key '" + key + "'");
    }
    if (stop == text.size()) break;
  }
  if (!have_fixture) {
    throw ScenarioParseError(1, 1, "missing required key 'fixture'");
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScenarioParseError(0, 0, "cannot open scenario file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string clt_expectation(Singularity singularity, UniformConvergence uniform,
                            VarianceTrend trend) {
  if (singularity == Singularity::Singular ||
      uniform == UniformConvergence::SingularTrivial) {
    return "out-of-hypothesis (singular sequence)";
  }
  if (singularity == Singularity::SingularOnPrefix) {
    return "out-of-hypothesis (non-singularity not established)";
  }
  switch (uniform) {
    case UniformConvergence::Fails:
      return "out-of-hypothesis (uniform convergence fails)";
    case UniformConvergence::HoldsOnPrefix:
    case UniformConvergence::Inconclusive:
      return "out-of-hypothesis (uniform convergence not certified)";
    default:
      break;
  }
  switch (trend) {
    case VarianceTrend::Diverges: return "yes";
    case VarianceTrend::Bounded:
    case VarianceTrend::Zero: return "no (total variance bounded)";
    case VarianceTrend::Unknown: break;
  }
  return "out-of-hypothesis (total variance trend unknown)";
}

std::string summarize(const RandomSequence& seq, const AlphaProfile& profile,
                      const ConvergenceReport& report) {
  std::ostringstream os;
  os << "fixture: " << seq.name << "\n";
  if (!seq.description.empty()) {
    os << "regime: " << seq.description << "\n";
  }
  os << "singularity: " << to_string(report.singularity.verdict);
  if (report.singularity.witness) {
    os << " (witness n=" << *report.singularity.witness << ")";
  }
  os << "\n";
  os << "uniform convergence: " << to_string(profile.verdict)
     << " (s_max=" << format_real(profile.s_grid.back())
     << ", tol=" << format_real(profile.tolerance) << ", prefix=" << profile.prefix()
     << ")\n";
  os << "total variance: " << to_string(report.variance_trend) << ";";
  for (const auto& row : report.rows) {
    os << " B_" << row.n << "=" << format_real(row.scale);
  }
  os << "\n";
  os << "Lindeberg L_n(" << format_real(report.eps) << "):";
  for (const auto& row : report.rows) {
    os << " n=" << row.n << ":" << format_real(row.lindeberg) << "<="
       << format_real(row.bound.value());
  }
  os << "\n";
  os << "KS distance to N(0,1), m=" << report.samples << ":";
  bool falling = true;
  bool rising = true;
  double previous = std::numeric_limits<double>::quiet_NaN();
  std::size_t simulated = 0;
  for (const auto& row : report.rows) {
    os << " n=" << row.n << ":" << format_real(row.ks);
    if (!row.degenerate) {
      if (!std::isnan(previous)) {
        falling = falling && row.ks <= previous;
        rising = rising && row.ks >= previous;
      }
      previous = row.ks;
      ++simulated;
    }
  }
  os << "\n";
  os << "KS trend: ";
  if (simulated == 0) {
    os << "not simulated (B_n = 0)";
  } else if (simulated == 1) {
    os << "single point";
  } else {
    os << (falling ? "nonincreasing" : rising ? "nondecreasing" : "mixed");
  }
  os << "\n";
  os << "CLT expected: "
     << clt_expectation(report.singularity.verdict, profile.verdict, report.variance_trend)
     << "\n";
  return os.str();
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& out_dir,
                              const std::string& configured, const std::string& fallback) {
  const std::filesystem::path p = configured.empty() ? fallback : configured;
  return p.is_absolute() ? p : out_dir / p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << content;
}

}  // namespace

ScenarioOutcome run_scenario(const Scenario& scenario, const RunOptions& options) {
  const RandomSequence seq = fixture(scenario.fixture);
  StudyConfig study = scenario.study;
  if (options.seed) study.root_seed = *options.seed;
  if (options.samples) study.samples = *options.samples;
  if (options.workers) study.workers = *options.workers;

  ScenarioOutcome outcome;
  outcome.profile =
      check_uniform_convergence(seq, study.s_grid, study.alpha_prefix, study.tolerance);
  outcome.report = convergence_study(seq, study);
  outcome.expectation = clt_expectation(outcome.report.singularity.verdict,
                                        outcome.profile.verdict,
                                        outcome.report.variance_trend);
  outcome.summary = summarize(seq, outcome.profile, outcome.report);

  const auto& name = scenario.fixture;
  const auto alpha_path = resolve(options.out_dir, scenario.alpha_csv, name + "_alpha.csv");
  const auto csv_path = resolve(options.out_dir, scenario.report_csv, name + "_report.csv");
  const auto json_path =
      resolve(options.out_dir, scenario.report_json, name + "_report.json");
  const auto summary_path =
      resolve(options.out_dir, scenario.summary, name + "_summary.txt");

  std::ostringstream alpha_csv;
  write_alpha_csv(alpha_csv, outcome.profile);
  write_file(alpha_path, alpha_csv.str());
  std::ostringstream report_csv;
  write_report_csv(report_csv, outcome.report);
  write_file(csv_path, report_csv.str());
  write_file(json_path, report_json(outcome.report));
  write_file(summary_path, outcome.summary);
  outcome.artifacts = {alpha_path, csv_path, json_path, summary_path};
  return outcome;
}

}  // namespace clt
