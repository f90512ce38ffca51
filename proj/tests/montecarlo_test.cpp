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

#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <set>
#include <sstream>

#include "cltcheck/errors.hpp"
#include "cltcheck/report_io.hpp"

namespace clt {
namespace {

TEST(RngStream, SameKeySameSequence) {
  RngStream a(42, StreamKey{7, 100, 3});
  RngStream b(42, StreamKey{7, 100, 3});
  RngStream c(42, StreamKey{7, 100, 4});
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    differs = differs || x != c.uniform();
  }
  EXPECT_TRUE(differs);
}

TEST(RngStream, KeyedConstructionMatchesDerivationChain) {
  RngStream keyed(5, StreamKey{11, 20, 9});
  RngStream chained(derive_seed(row_seed(5, 11, 20), 9));
  for (int i = 0; i < 100; ++i) EXPECT_EQ(keyed.engine()(), chained.engine()());
}

TEST(RngStream, UniformIsInUnitInterval) {
  RngStream stream(1);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = stream.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
}

TEST(NormalizedSum, DegenerateCannotBeNormalized) {
  RngStream stream(1);
  EXPECT_THROW(sample_normalized_sum(fixture("all_degenerate"), 5, stream),
               DegenerateNormalizationError);
}

TEST(NormalizedSum, SingleTermIsStandardized) {
  RngStream for_sum(123);
  RngStream for_term(123);
  const double value = sample_normalized_sum(fixture("iid_normal"), 1, for_sum);
  const auto term = fixture("iid_normal").term(1);
  const double v = term.sample(for_term);
  EXPECT_EQ(value, (v - term.mean()) / std::sqrt(term.variance()));

  RngStream s1(9);
  RngStream s2(9);
  const auto exp_seq = [] {
    RandomSequence seq;
    seq.law = [](std::size_t) { return Distribution::exponential(2.0); };
    return seq;
  }();
  const double drawn = exp_seq.term(1).sample(s2);
  EXPECT_DOUBLE_EQ(sample_normalized_sum(exp_seq, 1, s1), (drawn - 0.5) / 0.5);
}

TEST(NormalizedSum, RademacherSupport) {
  const std::set<double> support{-2.0, -1.0, 0.0, 1.0, 2.0};
  const NormalizedSumSampler sampler(fixture("iid_rademacher"), 4);
  RngStream stream(3);
  std::set<double> seen;
  for (int i = 0; i < 2000; ++i) seen.insert(sampler(stream));
  EXPECT_EQ(seen, support);
}

TEST(KsDistance, Examples) {
  EXPECT_EQ(ks_distance_to_normal(std::vector<double>{0.0}), 0.5);
  EXPECT_THROW(ks_distance_to_normal(std::vector<double>{}), DomainError);

  const boost::math::normal standard;
  std::vector<double> quantiles;
  for (int i = 1; i <= 100; ++i) quantiles.push_back(boost::math::quantile(standard, (i - 0.5) / 100));
  EXPECT_LE(ks_distance_to_normal(quantiles), 0.005 + 1e-12);

  RngStream stream(20240601);
  std::vector<double> draws(100000);
  for (auto& x : draws) x = stream.gaussian();
  EXPECT_LE(ks_distance_to_normal(draws), 1.63 / std::sqrt(1e5) * 1.5);
}

TEST(KsDistance, GeneralStatisticAgreesForContinuousLaw) {
  RngStream stream(8);
  std::vector<double> draws(5000);
  for (auto& x : draws) x = 0.8 * stream.gaussian() + 0.1;
  const auto phi = [](double x) { return normal_cdf(x); };
  EXPECT_NEAR(ks_statistic(draws, phi, phi), ks_distance_to_normal(draws), 1e-15);
}

TEST(KsDistance, PointMassAgainstNormal) {
  // sup |1{x >= 0} - Phi(x)| = 1/2, attained on both sides of 0.
  std::vector<double> zeros(1000, 0.0);
  EXPECT_EQ(ks_distance_to_normal(zeros), 0.5);
}

TEST(ParallelFor, CoversRangeOnce) {
  for (const unsigned workers : {1u, 2u, 3u, 8u}) {
    std::vector<int> hits(1001, 0);
    parallel_for(hits.size(), workers, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (const int h : hits) EXPECT_EQ(h, 1);
  }
}

std::string csv_of(const ConvergenceReport& report) {
  std::ostringstream os;
  write_report_csv(os, report);
  return os.str();
}

TEST(ConvergenceStudy, DeterministicAcrossWorkerCounts) {
  const auto seq = fixture("mixed_two_families");
  const std::vector<std::size_t> grid{5, 50};
  const auto one = convergence_study(seq, grid, 3000, 0.5, 77, 1);
  const auto four = convergence_study(seq, grid, 3000, 0.5, 77, 4);
  const auto again = convergence_study(seq, grid, 3000, 0.5, 77, 3);
  EXPECT_EQ(csv_of(one), csv_of(four));
  EXPECT_EQ(csv_of(one), csv_of(again));
  EXPECT_EQ(report_json(one), report_json(four));
  const auto other_seed = convergence_study(seq, grid, 3000, 0.5, 78, 1);
  EXPECT_NE(csv_of(one), csv_of(other_seed));
}

TEST(ConvergenceStudy, RowsAndMetadata) {
  const auto report = convergence_study(fixture("iid_rademacher"),
                                        std::vector<std::size_t>{10, 100}, 20000, 0.5, 1, 0);
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_EQ(report.singularity.verdict, Singularity::NonSingular);
  EXPECT_EQ(report.uniform_convergence, UniformConvergence::HoldsCertified);
  EXPECT_EQ(report.rows[0].scale, std::sqrt(10.0));
  EXPECT_GT(report.rows[0].ks, report.rows[1].ks);
  for (const auto& row : report.rows) {
    EXPECT_LE(row.lindeberg, row.bound.value());
    EXPECT_GE(row.ks, 0.0);
    EXPECT_LE(row.ks, 1.0);
    EXPECT_EQ(row.samples, 20000u);
  }
}

TEST(ConvergenceStudy, DegenerateRowsAreMarked) {
  const auto report = convergence_study(fixture("all_degenerate"),
                                        std::vector<std::size_t>{3, 30}, 100, 0.5, 1, 1);
  for (const auto& row : report.rows) {
    EXPECT_TRUE(row.degenerate);
    EXPECT_TRUE(std::isnan(row.ks));
  }
  EXPECT_NE(csv_of(report).find("3,0,NA,NA,NA,100,"), std::string::npos);
}

TEST(ConvergenceStudy, Preconditions) {
  const auto seq = fixture("iid_rademacher");
  EXPECT_THROW(convergence_study(seq, std::vector<std::size_t>{10}, 99, 0.5, 1), DomainError);
  EXPECT_THROW(convergence_study(seq, std::vector<std::size_t>{10}, 100, 0.0, 1), DomainError);
  EXPECT_THROW(convergence_study(seq, std::vector<std::size_t>{}, 100, 0.5, 1), DomainError);
}

TEST(ConvergenceStudy, NormalizedSumsHaveUnitVariance) {
  const std::size_t m = 40000;
  const double band = 5.0 / std::sqrt(static_cast<double>(m));
  for (const auto& info : fixture_catalog()) {
    // Kurtosis of the spike sums grows like n / 3; the band would not apply.
    if (info.name == "bc_spikes") continue;
    const auto report = convergence_study(fixture(info.name),
                                          std::vector<std::size_t>{1, 10, 200}, m, 0.5, 4, 0);
    for (const auto& row : report.rows) {
      if (row.degenerate) continue;
      EXPECT_NEAR(row.sample_variance, 1.0, band) << info.name << " n=" << row.n;
    }
  }
}

TEST(EtaBound, Examples) {
  EXPECT_EQ(eta_cauchy_bound(1.7, 1.7, 0.3), 0.0);
  EXPECT_DOUBLE_EQ(eta_cauchy_bound(1.0, 2.0, 1.0), 4.0);
  EXPECT_THROW(eta_cauchy_bound(0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(eta_cauchy_bound(2.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(eta_cauchy_bound(1.0, 2.0, 0.0), DomainError);
}

TEST(EtaTail, SameIndexIsExactlyZero) {
  const auto estimate = estimate_eta_tail(fixture("dyadic_bounded"), 6, 6, 1e-9, 1000, 1);
  EXPECT_EQ(estimate.probability, 0.0);
  EXPECT_EQ(estimate.bound, 0.0);
}

TEST(EtaTail, AdjacentDyadicIndicesNeverExceedOne) {
  const auto seq = fixture("dyadic_bounded");
  // Worst case over the bounded support:
  // (1/B_10 - 1/B_11) * sum_{k=2}^{10} 2^-k + 2^-11 / B_11.
  const double b10 = std::sqrt(total_variance(seq, 10).total_variance);
  const double b11 = std::sqrt(total_variance(seq, 11).total_variance);
  double head = 0.0;
  for (int k = 2; k <= 10; ++k) head += std::ldexp(1.0, -k);
  const double worst = (1 / b10 - 1 / b11) * head + std::ldexp(1.0, -11) / b11;
  EXPECT_LT(worst, 1.0);
  EXPECT_EQ(estimate_eta_tail(seq, 10, 11, 1.0, 5000, 2).probability, 0.0);
}

TEST(EtaTail, DyadicEstimateRespectsBound) {
  const auto estimate =
      estimate_eta_tail(fixture("dyadic_bounded"), 2, 20, 0.05, 100000, 20240601);
  EXPECT_LE(estimate.probability, estimate.bound + 3 * estimate.standard_error());
  EXPECT_GT(estimate.probability, 0.0);
}

TEST(EtaTail, Preconditions) {
  const auto seq = fixture("dyadic_bounded");
  EXPECT_THROW(estimate_eta_tail(seq, 1, 5, 0.1, 1000, 1), DomainError);
  EXPECT_THROW(estimate_eta_tail(seq, 5, 4, 0.1, 1000, 1), DomainError);
  EXPECT_THROW(estimate_eta_tail(seq, 2, 5, 0.1, 999, 1), DomainError);
  EXPECT_THROW(estimate_eta_tail(seq, 2, 5, 0.0, 1000, 1), DomainError);
  EXPECT_THROW(estimate_eta_tail(fixture("all_degenerate"), 2, 5, 0.1, 1000, 1), DomainError);
}

TEST(EtaTail, DeterministicAcrossWorkers) {
  const auto seq = fixture("dyadic_bounded");
  EXPECT_EQ(estimate_eta_tail(seq, 3, 9, 0.1, 4000, 5, 1).probability,
            estimate_eta_tail(seq, 3, 9, 0.1, 4000, 5, 3).probability);
}

TEST(DefaultGrid, FiftyPointsEndingAtTen) {
  const auto grid = default_s_grid();
  ASSERT_EQ(grid.size(), 50u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid.back(), 10.0);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_LT(grid[i - 1], grid[i]);
}

}  // namespace
}  // namespace clt
