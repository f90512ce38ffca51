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

#include "cltcheck/sequence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cltcheck/errors.hpp"

namespace clt {

std::string to_string(VarianceTrend trend) {
  switch (trend) {
    case VarianceTrend::Diverges: return "diverges";
    case VarianceTrend::Bounded: return "bounded";
    case VarianceTrend::Zero: return "zero";
    case VarianceTrend::Unknown: return "unknown";
  }
  return "unknown";
}

Distribution RandomSequence::term(std::size_t n) const {
  if (n == 0) {
    throw DomainError("sequence indices start at 1");
  }
  if (period) {
    n = (n - 1) % *period + 1;
  }
  return law(n);
}

std::vector<Distribution> RandomSequence::terms(std::size_t n) const {
  std::vector<Distribution> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    out.push_back(term(k));
  }
  return out;
}

double PartialSumStats::scale() const { return std::sqrt(total_variance); }

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

PartialSumStats total_variance(std::span<const Distribution> terms) {
  if (terms.empty()) {
    throw DomainError("total variance needs n >= 1");
  }
  PartialSumStats stats;
  stats.n = terms.size();
  stats.term_variances.reserve(terms.size());
  std::vector<double> means;
  means.reserve(terms.size());
  for (const auto& d : terms) {
    stats.term_variances.push_back(d.variance());
    means.push_back(d.mean());
  }
  stats.total_variance = compensated_sum(stats.term_variances);
  stats.sum_mean = compensated_sum(means);
  return stats;
}

PartialSumStats total_variance(const RandomSequence& seq, std::size_t n) {
  if (n == 0) {
    throw DomainError("total variance needs n >= 1");
  }
  const auto terms = seq.terms(n);
  return total_variance(terms);
}

VarianceTrend variance_trend(const RandomSequence& seq) {
  if (seq.period) {
    for (std::size_t k = 1; k <= *seq.period; ++k) {
      if (seq.term(k).variance() > 0.0) {
        return VarianceTrend::Diverges;
      }
    }
    return VarianceTrend::Zero;
  }
  return seq.certified_trend;
}

namespace {

constexpr std::array<FixtureInfo, 6> kCatalog{{
    {"iid_rademacher", "i.i.d. +/-1 signs; B_n^2 = n diverges; CLT holds"},
    {"dyadic_bounded",
     "+/-2^-n signs; B_n^2 -> 1/3; limit Uniform(-sqrt3, sqrt3); CLT fails"},
    {"bc_spikes",
     "+/-n w.p. 1/(2n^2) each, else 0; B_n^2 = n but no uniform envelope; "
     "normalized sum -> 0"},
    {"iid_normal", "i.i.d. Normal(0,1); singular sequence"},
    {"all_degenerate", "constant 1; singular; B_n^2 = 0"},
    {"mixed_two_families",
     "alternating +/-1 and Uniform(-sqrt3, sqrt3); finite family; CLT holds"},
}};

double step_envelope(double s, double edge) { return s <= edge ? 1.0 : 0.0; }

RandomSequence iid_rademacher() {
  RandomSequence seq;
  seq.law = [](std::size_t) { return Distribution::two_point(0.0, 1.0); };
  seq.envelope = [](double s) { return step_envelope(s, 1.0); };
  seq.period = 1;
  return seq;
}

RandomSequence dyadic_bounded() {
  RandomSequence seq;
  seq.law = [](std::size_t n) {
    return Distribution::two_point(0.0, std::ldexp(1.0, -static_cast<int>(n)));
  };
  // alpha_n(s) = 1{s <= 2^-n} <= 1{s <= 1/2}.
  seq.envelope = [](double s) { return step_envelope(s, 0.5); };
  seq.certified_trend = VarianceTrend::Bounded;
  return seq;
}

RandomSequence bc_spikes() {
  RandomSequence seq;
  seq.law = [](std::size_t n) {
    const double height = static_cast<double>(n);
    return Distribution::three_point(0.0, height, 1.0 / (height * height));
  };
  // alpha_n(s) = 1 whenever n >= s.
  seq.witness = UniformityWitness{
      1.0, [](double s) {
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(s)));
      }};
  seq.certified_trend = VarianceTrend::Diverges;  // sigma_n^2 = 1 for all n
  return seq;
}

RandomSequence iid_normal() {
  RandomSequence seq;
  seq.law = [](std::size_t) { return Distribution::normal(0.0, 1.0); };
  seq.envelope = [](double s) { return Distribution::normal(0.0, 1.0).tail_fraction(s); };
  seq.period = 1;
  return seq;
}

RandomSequence all_degenerate() {
  RandomSequence seq;
  seq.law = [](std::size_t) { return Distribution::degenerate(1.0); };
  seq.envelope = [](double) { return 0.0; };
  seq.period = 1;
  return seq;
}

RandomSequence mixed_two_families() {
  RandomSequence seq;
  seq.law = [](std::size_t n) {
    return n % 2 == 1 ? Distribution::two_point(0.0, 1.0)
                      : Distribution::uniform(-std::numbers::sqrt3, std::numbers::sqrt3);
  };
  seq.envelope = [](double s) {
    const auto u = Distribution::uniform(-std::numbers::sqrt3, std::numbers::sqrt3);
    return std::max(step_envelope(s, 1.0), u.tail_fraction(s));
  };
  seq.period = 2;
  return seq;
}

}  // namespace

std::span<const FixtureInfo> fixture_catalog() { return kCatalog; }

RandomSequence fixture(std::string_view name) {
  RandomSequence seq;
  if (name == "iid_rademacher") {
    seq = iid_rademacher();
  } else if (name == "dyadic_bounded") {
    seq = dyadic_bounded();
  } else if (name == "bc_spikes") {
    seq = bc_spikes();
  } else if (name == "iid_normal") {
    seq = iid_normal();
  } else if (name == "all_degenerate") {
    seq = all_degenerate();
  } else if (name == "mixed_two_families") {
    seq = mixed_two_families();
  } else {
    std::string message = "unknown fixture '" + std::string(name) + "'; known:";
    for (const auto& info : kCatalog) {
      message += " ";
      message += info.name;
    }
    throw LookupError(message);
  }
  seq.name = std::string(name);
  const auto it = std::find_if(kCatalog.begin(), kCatalog.end(),
                               [&](const FixtureInfo& f) { return f.name == name; });
  seq.description = std::string(it->regime);
  return seq;
}

}  // namespace clt
