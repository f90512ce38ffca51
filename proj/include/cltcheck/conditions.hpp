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

#ifndef CLTCHECK_CONDITIONS_HPP_
#define CLTCHECK_CONDITIONS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cltcheck/distribution.hpp"
#include "cltcheck/sequence.hpp"

namespace clt {

// Share of the variance of d carried at distance >= s from the mean;
// 0 for degenerate laws. Throws DomainError for s < 0.
double alpha(const Distribution& d, double s);

enum class UniformConvergence {
  HoldsCertified,   // envelope or exact periodic supremum is below tol at s_max
  HoldsOnPrefix,    // only the supremum over 1..N is below tol (weaker claim)
  Fails,            // certified witness keeps the supremum away from 0
  SingularTrivial,  // every term degenerate, alpha == 0
  Inconclusive,     // nothing below tol at s_max; extend the grid
};

std::string to_string(UniformConvergence verdict);

inline constexpr double kDefaultUniformTolerance = 1e-6;

struct AlphaProfile {
  std::vector<double> s_grid;
  // values[n - 1][j] = alpha_n(s_grid[j]), n = 1..prefix.
  std::vector<std::vector<double>> values;
  // Column suprema over the prefix, or over a full period when the sequence
  // is periodic.
  std::vector<double> sup_row;
  std::optional<std::vector<double>> envelope_row;
  UniformConvergence verdict = UniformConvergence::Inconclusive;
  double tolerance = kDefaultUniformTolerance;

  std::size_t prefix() const { return values.size(); }
};

AlphaProfile check_uniform_convergence(const RandomSequence& seq,
                                       std::span<const double> s_grid,
                                       std::size_t prefix,
                                       double tol = kDefaultUniformTolerance);

enum class Singularity { Singular, NonSingular, SingularOnPrefix };

std::string to_string(Singularity verdict);

struct SingularityReport {
  Singularity verdict = Singularity::SingularOnPrefix;
  // First index whose law is neither degenerate nor normal.
  std::optional<std::size_t> witness;
};

SingularityReport classify_singularity(const RandomSequence& seq, std::size_t prefix);

// L_n(eps) = B_n^-2 sum_{k<=n} sigma_k^2 alpha_k(eps B_n).
// Throws UndefinedFunctionalError when B_n^2 = 0.
double lindeberg_functional(std::span<const Distribution> terms, double eps);
double lindeberg_functional(const RandomSequence& seq, std::size_t n, double eps);

struct LindebergBound {
  double prefix_sup = 0.0;            // max_{k<=n} alpha_k(eps B_n)
  std::optional<double> envelope;     // A(eps B_n) when the sequence has one

  double value() const { return prefix_sup; }
};

LindebergBound lindeberg_upper_bound(std::span<const Distribution> terms,
                                     double eps, const RandomSequence* seq = nullptr);
LindebergBound lindeberg_upper_bound(const RandomSequence& seq, std::size_t n,
                                     double eps);

}  // namespace clt

#endif  // CLTCHECK_CONDITIONS_HPP_
