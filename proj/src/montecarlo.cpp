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

#include "cltcheck/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "cltcheck/errors.hpp"

namespace clt {

NormalizedSumSampler::NormalizedSumSampler(const RandomSequence& seq, std::size_t n)
    : NormalizedSumSampler(n == 0 ? throw DomainError("n must be >= 1")
                                  : seq.terms(n)) {}

NormalizedSumSampler::NormalizedSumSampler(std::vector<Distribution> terms)
    : terms_(std::move(terms)), stats_(total_variance(terms_)) {
  scale_ = stats_.scale();
  if (!(scale_ > 0.0)) {
    throw DegenerateNormalizationError("cannot normalize S_n: B_n = 0");
  }
}

double NormalizedSumSampler::operator()(RngStream& stream) const {
  double centered = 0.0;
  for (const auto& d : terms_) {
    centered += d.sample(stream) - d.mean();
  }
  return centered / scale_;
}

double sample_normalized_sum(const RandomSequence& seq, std::size_t n,
                             RngStream& stream) {
  return NormalizedSumSampler(seq, n)(stream);
}

double ks_distance_to_normal(std::span<const double> samples) {
  if (samples.empty()) {
    throw DomainError("KS distance needs at least one sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = normal_cdf(sorted[i]);
    const auto rank = static_cast<double>(i);
    d = std::max({d, (rank + 1.0) / m - phi, phi - rank / m});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left) {
  if (samples.empty()) {
    throw DomainError("KS statistic needs at least one sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto m = static_cast<double>(sorted.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double v = sorted[i];
    d = std::max({d, std::abs(static_cast<double>(j) / m - cdf(v)),
                  std::abs(static_cast<double>(i) / m - cdf_left(v))});
    i = j;
  }
  return std::clamp(d, 0.0, 1.0);
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    fn(0, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

std::vector<double> simulate_normalized_sums(const NormalizedSumSampler& sampler,
                                             std::size_t m, std::uint64_t row_seed,
                                             unsigned workers) {
  std::vector<double> draws(m);
  parallel_for(m, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      RngStream stream(derive_seed(row_seed, r));
      draws[r] = sampler(stream);
    }
  });
  return draws;
}

std::vector<double> default_s_grid() {
  // 0 followed by 49 log-spaced points on [1e-2, 10].
  std::vector<double> grid{0.0};
  constexpr int kPoints = 49;
  for (int i = 0; i < kPoints; ++i) {
    const double exponent = -2.0 + 3.0 * static_cast<double>(i) / (kPoints - 1);
    grid.push_back(std::pow(10.0, exponent));
  }
  grid.back() = 10.0;
  return grid;
}

namespace {

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(xs.size() - 1);
}

}  // namespace

ConvergenceReport convergence_study(const RandomSequence& seq, const StudyConfig& config) {
  if (config.samples < 100) {
    throw DomainError("convergence study needs at least 100 samples per n");
  }
  if (!(config.eps > 0.0)) {
    throw DomainError("eps must be positive");
  }
  if (config.n_grid.empty()) {
    throw DomainError("n grid must be nonempty");
  }
  ConvergenceReport report;
  report.fixture = seq.name;
  report.eps = config.eps;
  report.root_seed = config.root_seed;
  report.samples = config.samples;
  report.n_grid = config.n_grid;
  const std::size_t n_max = *std::max_element(config.n_grid.begin(), config.n_grid.end());
  report.singularity = classify_singularity(seq, n_max);
  report.uniform_convergence =
      check_uniform_convergence(seq, config.s_grid, config.alpha_prefix, config.tolerance)
          .verdict;
  report.variance_trend = variance_trend(seq);

  const std::uint64_t study = fnv1a64(seq.name);
  for (const std::size_t n : config.n_grid) {
    if (n == 0) {
      throw DomainError("n grid entries must be >= 1");
    }
    ConvergenceRow row;
    row.n = n;
    row.samples = config.samples;
    row.seed = row_seed(config.root_seed, study, n);
    auto terms = seq.terms(n);
    const auto stats = total_variance(terms);
    row.scale = stats.scale();
    if (!(stats.total_variance > 0.0)) {
      constexpr double nan = std::numeric_limits<double>::quiet_NaN();
      row.degenerate = true;
      row.lindeberg = nan;
      row.bound.prefix_sup = nan;
      row.ks = nan;
      row.sample_variance = nan;
      report.rows.push_back(row);
      continue;
    }
    row.lindeberg = lindeberg_functional(terms, config.eps);
    row.bound = lindeberg_upper_bound(terms, config.eps, &seq);
    if (row.lindeberg > row.bound.value() + 1e-12) {
      throw std::logic_error("Lindeberg functional exceeds its domination bound");
    }
    const NormalizedSumSampler sampler(std::move(terms));
    const auto draws =
        simulate_normalized_sums(sampler, config.samples, row.seed, config.workers);
    row.ks = ks_distance_to_normal(draws);
    row.sample_variance = sample_variance(draws);
    report.rows.push_back(row);
  }
  return report;
}

ConvergenceReport convergence_study(const RandomSequence& seq,
                                    std::span<const std::size_t> n_grid, std::size_t m,
                                    double eps, std::uint64_t root_seed,
                                    unsigned workers) {
  StudyConfig config;
  config.n_grid.assign(n_grid.begin(), n_grid.end());
  config.samples = m;
  config.eps = eps;
  config.root_seed = root_seed;
  config.workers = workers;
  return convergence_study(seq, config);
}

double eta_cauchy_bound(double scale_n, double scale_l, double eps) {
  if (!(scale_n > 0.0) || !(scale_l >= scale_n) || !(eps > 0.0) ||
      !std::isfinite(scale_l)) {
    throw DomainError("eta bound needs 0 < B_n <= B_l and eps > 0");
  }
  const double gap = 1.0 / scale_l - 1.0 / scale_n;
  const double eps2 = eps * eps;
  const double head = gap * gap * 4.0 * scale_n * scale_n / eps2;
  const double tail =
      4.0 * (scale_l * scale_l - scale_n * scale_n) / (scale_l * scale_l * eps2);
  return head + tail;
}

double EtaTailEstimate::standard_error() const {
  if (samples == 0) return 0.0;
  return std::sqrt(probability * (1.0 - probability) / static_cast<double>(samples));
}

EtaTailEstimate estimate_eta_tail(const RandomSequence& seq, std::size_t n,
                                  std::size_t l, double eps, std::size_t m,
                                  std::uint64_t root_seed, unsigned workers) {
  if (n < 2 || l < n) {
    throw DomainError("eta tail needs l >= n >= 2");
  }
  if (m < 1000) {
    throw DomainError("eta tail needs at least 1000 samples");
  }
  if (!(eps > 0.0)) {
    throw DomainError("eps must be positive");
  }
  const auto terms = seq.terms(l);
  const auto stats = total_variance(terms);
  const double scale_l = stats.scale();
  const double scale_n = std::sqrt(compensated_sum(
      std::span<const double>(stats.term_variances).first(n)));
  if (!(scale_n > 0.0)) {
    throw DomainError("eta tail needs B_n > 0");
  }

  EtaTailEstimate estimate;
  estimate.samples = m;
  estimate.bound = eta_cauchy_bound(scale_n, scale_l, eps);

  const std::uint64_t seed =
      derive_seed(row_seed(root_seed, fnv1a64("eta/" + seq.name), n), l);
  std::vector<unsigned char> exceed(m, 0);
  parallel_for(m, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      RngStream stream(derive_seed(seed, r));
      double head = 0.0;  // xi_2 + ... + xi_n, centered
      for (std::size_t k = 2; k <= n; ++k) {
        head += terms[k - 1].sample(stream) - terms[k - 1].mean();
      }
      double rest = 0.0;  // xi_{n+1} + ... + xi_l, centered
      for (std::size_t k = n + 1; k <= l; ++k) {
        rest += terms[k - 1].sample(stream) - terms[k - 1].mean();
      }
      const double eta_n = head / scale_n;
      const double eta_l = (head + rest) / scale_l;
      exceed[r] = std::abs(eta_l - eta_n) > eps ? 1 : 0;
    }
  });
  std::size_t hits = 0;
  for (const auto e : exceed) hits += e;
  estimate.probability = static_cast<double>(hits) / static_cast<double>(m);
  return estimate;
}

}  // namespace clt
