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

#include "cltcheck/report_io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace clt {

std::string format_real(double value) {
  if (std::isnan(value)) {
    return "NA";
  }
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void write_alpha_csv(std::ostream& out, const AlphaProfile& profile) {
  out << "s";
  for (std::size_t n = 1; n <= profile.prefix(); ++n) {
    out << ",alpha_" << n;
  }
  out << ",sup\n";
  for (std::size_t j = 0; j < profile.s_grid.size(); ++j) {
    out << format_real(profile.s_grid[j]);
    for (const auto& row : profile.values) {
      out << ',' << format_real(row[j]);
    }
    out << ',' << format_real(profile.sup_row[j]) << '\n';
  }
  out << "# verdict=" << to_string(profile.verdict) << '\n';
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "# cltcheck convergence_report schema_version=" << kReportSchemaVersion << '\n';
  out << "n,B_n,lindeberg,bound,ks,m,seed\n";
  for (const auto& row : report.rows) {
    out << row.n << ',' << format_real(row.scale) << ',' << format_real(row.lindeberg)
        << ',' << format_real(row.bound.value()) << ',' << format_real(row.ks) << ','
        << row.samples << ',' << row.seed << '\n';
  }
}

std::string report_json(const ConvergenceReport& report) {
  using nlohmann::json;
  const auto real_or_null = [](double v) -> json {
    return std::isnan(v) ? json(nullptr) : json(v);
  };
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "convergence_report";
  doc["fixture"] = report.fixture;
  doc["eps"] = report.eps;
  doc["root_seed"] = report.root_seed;
  doc["samples"] = report.samples;
  doc["n_grid"] = report.n_grid;
  json verdicts;
  verdicts["singularity"] = to_string(report.singularity.verdict);
  verdicts["singularity_witness"] = report.singularity.witness
                                        ? json(*report.singularity.witness)
                                        : json(nullptr);
  verdicts["uniform_convergence"] = to_string(report.uniform_convergence);
  verdicts["variance_trend"] = to_string(report.variance_trend);
  doc["verdicts"] = verdicts;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["n"] = row.n;
    r["B_n"] = row.scale;
    r["degenerate"] = row.degenerate;
    r["lindeberg"] = real_or_null(row.lindeberg);
    r["bound"] = real_or_null(row.bound.value());
    r["envelope_bound"] = row.bound.envelope && !row.degenerate
                              ? real_or_null(*row.bound.envelope)
                              : json(nullptr);
    r["ks"] = real_or_null(row.ks);
    r["sample_variance"] = real_or_null(row.sample_variance);
    r["m"] = row.samples;
    r["seed"] = row.seed;
    rows.push_back(r);
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

}  // namespace clt
