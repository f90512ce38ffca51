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

#ifndef CLTCHECK_MONTECARLO_HPP_
#define CLTCHECK_MONTECARLO_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cltcheck/conditions.hpp"
#include "cltcheck/distribution.hpp"
#include "cltcheck/rng.hpp"
#include "cltcheck/sequence.hpp"

namespace clt {

// Draws S~_n = (S_n - E S_n) / B_n for a fixed prefix of a sequence.
class NormalizedSumSampler {
 public:
  NormalizedSumSampler(const RandomSequence& seq, std::size_t n);
  explicit NormalizedSumSampler(std::vector<Distribution> terms);

  double operator()(RngStream& stream) const;

  std::size_t n() const { return terms_.size(); }
  const PartialSumStats& stats() const { return stats_; }
  double scale() const { return scale_; }

 private:
  std::vector<Distribution> terms_;
  PartialSumStats stats_;
  double scale_ = 0.0;
};

// Throws DegenerateNormalizationError when B_n = 0.
double sample_normalized_sum(const RandomSequence& seq, std::size_t n,
                             RngStream& stream);

// Exact one-sample KS statistic against the standard normal:
// max_i max(i/m - Phi(x_(i)), Phi(x_(i)) - (i-1)/m).
double ks_distance_to_normal(std::span<const double> samples);

// One-sample KS statistic against an arbitrary law. `cdf_left` is P(X < x);
// pass the same function twice for continuous laws. Ties are handled by
// comparing the ECDF on both sides of each distinct sample value.
double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left);

// Runs fn(begin, end) over [0, count) split into contiguous chunks.
// workers == 0 picks std::thread::hardware_concurrency().
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t, std::size_t)>& fn);

// m replicate draws; replicate r uses RngStream(derive_seed(row_seed, r)).
std::vector<double> simulate_normalized_sums(const NormalizedSumSampler& sampler,
                                             std::size_t m, std::uint64_t row_seed,
                                             unsigned workers = 0);

std::vector<double> default_s_grid();

struct StudyConfig {
  std::vector<std::size_t> n_grid{10, 100, 1000};
  std::size_t samples = 100000;
  double eps = 0.5;
  std::uint64_t root_seed = 20240601;
  unsigned workers = 0;
  std::vector<double> s_grid = default_s_grid();
  std::size_t alpha_prefix = 100;
  double tolerance = kDefaultUniformTolerance;
};

struct ConvergenceRow {
  std::size_t n = 0;
  double scale = 0.0;  // B_n
  bool degenerate = false;
  double lindeberg = 0.0;
  LindebergBound bound;
  double ks = 0.0;
  double sample_variance = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr int kReportSchemaVersion = 1;

struct ConvergenceReport {
  std::string fixture;
  double eps = 0.0;
  std::uint64_t root_seed = 0;
  std::size_t samples = 0;
  std::vector<std::size_t> n_grid;
  SingularityReport singularity;
  UniformConvergence uniform_convergence = UniformConvergence::Inconclusive;
  VarianceTrend variance_trend = VarianceTrend::Unknown;
  std::vector<ConvergenceRow> rows;
};

// Deterministic given config.root_seed, for any worker count. Rows with
// B_n = 0 are marked degenerate instead of simulated.
ConvergenceReport convergence_study(const RandomSequence& seq, const StudyConfig& config);
ConvergenceReport convergence_study(const RandomSequence& seq,
                                    std::span<const std::size_t> n_grid, std::size_t m,
                                    double eps, std::uint64_t root_seed,
                                    unsigned workers = 0);

// Chebyshev bound on P(|eta_l - eta_n| > eps):
// (1/B_l - 1/B_n)^2 4 B_n^2 / eps^2 + 4 (B_l^2 - B_n^2) / (B_l^2 eps^2).
// Not clamped to 1.
double eta_cauchy_bound(double scale_n, double scale_l, double eps);

struct EtaTailEstimate {
  double probability = 0.0;
  std::size_t samples = 0;
  double bound = 0.0;  // eta_cauchy_bound(B_n, B_l, eps)

  double standard_error() const;
};

// Monte Carlo estimate of P(|eta_l - eta_n| > eps), eta_k = (xi_2 + ... + xi_k
// - E[...]) / B_k, with both etas built from the same draws xi_2..xi_l.
EtaTailEstimate estimate_eta_tail(const RandomSequence& seq, std::size_t n,
                                  std::size_t l, double eps, std::size_t m,
                                  std::uint64_t root_seed, unsigned workers = 0);

}  // namespace clt

#endif  // CLTCHECK_MONTECARLO_HPP_
