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

#ifndef CLTCHECK_SEQUENCE_HPP_
#define CLTCHECK_SEQUENCE_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cltcheck/distribution.hpp"

namespace clt {

// Certificate that sup_n alpha_n(s) stays at or above `floor` for every s:
// alpha_{index(s)}(s) >= floor.
struct UniformityWitness {
  double floor = 0.0;
  std::function<std::size_t(double)> index;
};

// Long-run behaviour of B_n^2.
enum class VarianceTrend { Diverges, Bounded, Zero, Unknown };

std::string to_string(VarianceTrend trend);

// An infinite sequence of independent random variables xi_1, xi_2, ...
//
// Suprema over all n are not computable term by term, so a sequence can carry
// metadata that makes them decidable:
//   envelope  A(s) >= alpha_n(s) for every n, with A(s) -> 0;
//   period    term(n) depends only on n mod period;
//   witness   a certified failure of the uniform-convergence condition;
//   trend     a certified statement about B_n^2 when there is no period.
struct RandomSequence {
  std::string name;
  std::string description;
  std::function<Distribution(std::size_t)> law;
  std::function<double(double)> envelope;
  std::optional<std::size_t> period;
  std::optional<UniformityWitness> witness;
  VarianceTrend certified_trend = VarianceTrend::Unknown;

  // Law of xi_n, n >= 1.
  Distribution term(std::size_t n) const;
  std::vector<Distribution> terms(std::size_t n) const;
  bool has_envelope() const { return static_cast<bool>(envelope); }
};

struct PartialSumStats {
  std::size_t n = 0;
  double sum_mean = 0.0;        // E S_n
  double total_variance = 0.0;  // B_n^2
  std::vector<double> term_variances;

  double scale() const;  // B_n
};

// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

PartialSumStats total_variance(const RandomSequence& seq, std::size_t n);
PartialSumStats total_variance(std::span<const Distribution> terms);

// Uses the period when present, otherwise the certified metadata.
VarianceTrend variance_trend(const RandomSequence& seq);

struct FixtureInfo {
  std::string_view name;
  std::string_view regime;
};

// The six registered fixtures, in registry order.
std::span<const FixtureInfo> fixture_catalog();

// Throws LookupError listing the registry for an unknown name.
RandomSequence fixture(std::string_view name);

}  // namespace clt

#endif  // CLTCHECK_SEQUENCE_HPP_
