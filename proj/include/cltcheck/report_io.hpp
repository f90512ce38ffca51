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

#ifndef CLTCHECK_REPORT_IO_HPP_
#define CLTCHECK_REPORT_IO_HPP_

#include <iosfwd>
#include <string>

#include "cltcheck/conditions.hpp"
#include "cltcheck/montecarlo.hpp"

namespace clt {

// Shortest round-trip decimal form; "NA" for NaN.
std::string format_real(double value);

// Header `s,alpha_1,...,alpha_N,sup`, one row per grid point, then a
// trailing `# verdict=<value>` comment row.
void write_alpha_csv(std::ostream& out, const AlphaProfile& profile);

// `# cltcheck convergence_report schema_version=1`, then the header
// `n,B_n,lindeberg,bound,ks,m,seed`. Degenerate rows carry NA in the
// lindeberg, bound and ks columns.
void write_report_csv(std::ostream& out, const ConvergenceReport& report);

// Full metadata document; see README for the schema.
std::string report_json(const ConvergenceReport& report);

}  // namespace clt

#endif  // CLTCHECK_REPORT_IO_HPP_
