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

// Test-only oracles. Nothing here calls the closed-form tail moments or the
// library's atom lists; each value is rebuilt from the family parameters.

#ifndef CLTCHECK_TESTS_ORACLES_HPP_
#define CLTCHECK_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cltcheck/distribution.hpp"

namespace clt::oracle {

struct OffsetAtom {
  double distance;
  double probability;
};

// Atoms as (|x - m|, p), straight from the parameters.
inline std::vector<OffsetAtom> enumerate(const Distribution& d) {
  const auto& params = d.params();
  if (std::holds_alternative<DegenerateParams>(params)) {
    return {{0.0, 1.0}};
  }
  if (const auto* p = std::get_if<TwoPointParams>(&params)) {
    return {{p->offset, 0.5}, {p->offset, 0.5}};
  }
  if (const auto* p = std::get_if<ThreePointParams>(&params)) {
    return {{p->offset, p->spike / 2}, {p->offset, p->spike / 2}, {0.0, 1 - p->spike}};
  }
  return {};
}

template <class F>
double integrate(F f, double a, double b) {
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20,
                                                                       1e-12, &error);
}

// E[(X - m)^2 ; |X - m| >= s] by atom enumeration or adaptive quadrature of
// the density.
inline double tail_second_moment(const Distribution& d, double s) {
  const auto& params = d.params();
  const double inf = std::numeric_limits<double>::infinity();
  if (d.is_discrete()) {
    double total = 0.0;
    for (const auto& a : enumerate(d)) {
      if (a.distance >= s) total += a.probability * a.distance * a.distance;
    }
    return total;
  }
  if (const auto* p = std::get_if<NormalParams>(&params)) {
    const double sd = std::sqrt(p->variance);
    const auto f = [sd](double y) {
      const double z = y / sd;
      return y * y * std::exp(-0.5 * z * z) / (sd * std::sqrt(2 * std::numbers::pi));
    };
    // Symmetric about the mean.
    return 2.0 * integrate(f, s, inf);
  }
  if (const auto* p = std::get_if<UniformParams>(&params)) {
    // In offset space y = x - m, so the support edge is exactly h.
    const double h = 0.5 * (p->upper - p->lower);
    const double density = 1.0 / (p->upper - p->lower);
    const auto f = [density](double y) { return y * y * density; };
    return s < h ? 2.0 * integrate(f, s, h) : 0.0;
  }
  if (const auto* p = std::get_if<ExponentialParams>(&params)) {
    const double rate = p->rate;
    const double m = 1.0 / rate;
    const auto f = [m, rate](double x) {
      return (x - m) * (x - m) * rate * std::exp(-rate * x);
    };
    double total = integrate(f, m + s, inf);
    if (s < m) total += integrate(f, 0.0, m - s);
    return total;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Raw moments by enumeration / quadrature.
inline double mean(const Distribution& d) {
  const auto& params = d.params();
  const double inf = std::numeric_limits<double>::infinity();
  if (const auto* p = std::get_if<DegenerateParams>(&params)) return p->value;
  if (const auto* p = std::get_if<TwoPointParams>(&params)) {
    return 0.5 * (p->mean - p->offset) + 0.5 * (p->mean + p->offset);
  }
  if (const auto* p = std::get_if<ThreePointParams>(&params)) {
    return p->spike / 2 * (p->mean - p->offset) + p->spike / 2 * (p->mean + p->offset) +
           (1 - p->spike) * p->mean;
  }
  if (const auto* p = std::get_if<NormalParams>(&params)) return p->mean;
  if (const auto* p = std::get_if<UniformParams>(&params)) {
    return integrate([&](double x) { return x / (p->upper - p->lower); }, p->lower,
                     p->upper);
  }
  if (const auto* p = std::get_if<ExponentialParams>(&params)) {
    return integrate([&](double x) { return x * p->rate * std::exp(-p->rate * x); }, 0.0,
                     inf);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline double relative_error(double value, double reference) {
  if (value == reference) return 0.0;
  return std::abs(value - reference) /
         std::max(std::abs(reference), std::numeric_limits<double>::min());
}

// sup_x |F_U(x) - Phi(x)| for U ~ Uniform(-sqrt3, sqrt3): dense scan then
// golden-section refinement around the best grid point.
inline double uniform_vs_normal_distance() {
  const double h = std::numbers::sqrt3;
  const auto gap = [h](double x) {
    const double fu = x <= -h ? 0.0 : (x >= h ? 1.0 : (x + h) / (2 * h));
    const double phi = 0.5 * std::erfc(-x / std::numbers::sqrt2);
    return std::abs(fu - phi);
  };
  double best_x = 0.0;
  double best = 0.0;
  const int steps = 200000;
  for (int i = 0; i <= steps; ++i) {
    const double x = -4.0 + 8.0 * i / steps;
    if (gap(x) > best) {
      best = gap(x);
      best_x = x;
    }
  }
  double a = best_x - 8.0 / steps;
  double b = best_x + 8.0 / steps;
  const double r = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double c = b - r * (b - a);
    const double e = a + r * (b - a);
    if (gap(c) > gap(e)) {
      b = e;
    } else {
      a = c;
    }
  }
  return std::max({best, gap(0.5 * (a + b)), gap(h)});
}

}  // namespace clt::oracle

#endif  // CLTCHECK_TESTS_ORACLES_HPP_
