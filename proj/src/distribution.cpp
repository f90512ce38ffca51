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

#include "cltcheck/distribution.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cltcheck/errors.hpp"

namespace clt {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

struct Offset {
  double distance;  // |atom - mean|
  double probability;
};

// Discrete kinds expressed relative to their mean, so that the inclusive
// comparison |x - m| >= s is made on the exact offset.
std::vector<Offset> offsets_of(const Distribution::Params& params) {
  return std::visit(
      Overloaded{
          [](const DegenerateParams&) {
            return std::vector<Offset>{{0.0, 1.0}};
          },
          [](const TwoPointParams& p) {
            return std::vector<Offset>{{p.offset, 0.5}, {p.offset, 0.5}};
          },
          [](const ThreePointParams& p) {
            return std::vector<Offset>{{p.offset, 0.5 * p.spike},
                                       {p.offset, 0.5 * p.spike},
                                       {0.0, 1.0 - p.spike}};
          },
          [](const auto&) { return std::vector<Offset>{}; }},
      params);
}

// G(t) = int_{|u-1| >= t} (u-1)^2 e^{-u} du for the unit-rate exponential,
// from the antiderivative -e^{-u}(u^2 + 1).
double unit_exponential_tail(double t) {
  const double upper = std::exp(-(1.0 + t)) * ((1.0 + t) * (1.0 + t) + 1.0);
  if (t >= 1.0) {
    return upper;
  }
  const double d = 1.0 - t;
  const double lower = -std::expm1(-d) - std::exp(-d) * d * d;
  return upper + lower;
}

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::Degenerate: return "Degenerate";
    case Kind::Normal: return "Normal";
    case Kind::TwoPoint: return "TwoPoint";
    case Kind::ThreePoint: return "ThreePoint";
    case Kind::Uniform: return "Uniform";
    case Kind::Exponential: return "Exponential";
  }
  return "Unknown";
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_upper_tail(double z) {
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

Distribution Distribution::degenerate(double value) {
  require_finite(value, "degenerate value");
  return {DegenerateParams{value}, value, 0.0};
}

Distribution Distribution::normal(double mean, double variance) {
  require_finite(mean, "normal mean");
  require_finite(variance, "normal variance");
  if (!(variance > 0.0)) {
    throw DomainError("normal variance must be positive; use degenerate()");
  }
  return {NormalParams{mean, variance}, mean, variance};
}

Distribution Distribution::two_point(double mean, double offset) {
  require_finite(mean, "two-point mean");
  require_finite(offset, "two-point offset");
  if (!(offset > 0.0)) {
    throw DomainError("two-point offset must be positive");
  }
  return {TwoPointParams{mean, offset}, mean, offset * offset};
}

Distribution Distribution::three_point(double mean, double offset, double spike) {
  require_finite(mean, "three-point mean");
  require_finite(offset, "three-point offset");
  if (!(offset > 0.0)) {
    throw DomainError("three-point offset must be positive");
  }
  if (!(spike > 0.0 && spike <= 1.0)) {
    throw DomainError("three-point spike probability must lie in (0, 1]");
  }
  // Written as two halves so that tail_second_moment(0) reproduces it exactly.
  const double half = 0.5 * spike * (offset * offset);
  return {ThreePointParams{mean, offset, spike}, mean, half + half};
}

Distribution Distribution::uniform(double lower, double upper) {
  require_finite(lower, "uniform lower bound");
  require_finite(upper, "uniform upper bound");
  if (!(lower < upper)) {
    throw DomainError("uniform bounds must satisfy lower < upper");
  }
  const double width = upper - lower;
  return {UniformParams{lower, upper}, 0.5 * (lower + upper), width * width / 12.0};
}

Distribution Distribution::exponential(double rate) {
  require_finite(rate, "exponential rate");
  if (!(rate > 0.0)) {
    throw DomainError("exponential rate must be positive");
  }
  return {ExponentialParams{rate}, 1.0 / rate, 1.0 / (rate * rate)};
}

bool Distribution::is_discrete() const {
  const Kind k = kind();
  return k == Kind::Degenerate || k == Kind::TwoPoint || k == Kind::ThreePoint;
}

std::vector<Atom> Distribution::atoms() const {
  return std::visit(
      Overloaded{
          [](const DegenerateParams& p) { return std::vector<Atom>{{p.value, 1.0}}; },
          [](const TwoPointParams& p) {
            return std::vector<Atom>{{p.mean - p.offset, 0.5},
                                     {p.mean + p.offset, 0.5}};
          },
          [](const ThreePointParams& p) {
            std::vector<Atom> out{{p.mean - p.offset, 0.5 * p.spike}};
            if (p.spike < 1.0) {
              out.push_back({p.mean, 1.0 - p.spike});
            }
            out.push_back({p.mean + p.offset, 0.5 * p.spike});
            return out;
          },
          [](const auto&) { return std::vector<Atom>{}; }},
      params_);
}

double Distribution::tail_fraction(double s) const {
  if (!(s >= 0.0)) {
    throw DomainError("tail threshold s must be nonnegative");
  }
  return std::visit(
      Overloaded{
          [](const DegenerateParams&) { return 0.0; },
          [s](const NormalParams& p) {
            const double z = s / std::sqrt(p.variance);
            return 2.0 * (z * normal_pdf(z) + normal_upper_tail(z));
          },
          [s](const TwoPointParams& p) { return p.offset >= s ? 1.0 : 0.0; },
          [s](const ThreePointParams& p) { return p.offset >= s ? 1.0 : 0.0; },
          [s](const UniformParams& p) {
            const double t = s / (0.5 * (p.upper - p.lower));
            return t < 1.0 ? (1.0 - t) * (1.0 + t + t * t) : 0.0;
          },
          [s](const ExponentialParams& p) { return unit_exponential_tail(p.rate * s); }},
      params_);
}

double Distribution::tail_second_moment(double s) const {
  if (!(s >= 0.0)) {
    throw DomainError("tail threshold s must be nonnegative");
  }
  if (is_discrete()) {
    double total = 0.0;
    for (const auto& o : offsets_of(params_)) {
      if (o.distance >= s) {
        total += o.probability * (o.distance * o.distance);
      }
    }
    return total;
  }
  return variance_ * tail_fraction(s);
}

double Distribution::cdf(double x) const {
  return std::visit(
      Overloaded{
          [x](const NormalParams& p) {
            return normal_cdf((x - p.mean) / std::sqrt(p.variance));
          },
          [x](const UniformParams& p) {
            if (x <= p.lower) return 0.0;
            if (x >= p.upper) return 1.0;
            return (x - p.lower) / (p.upper - p.lower);
          },
          [x](const ExponentialParams& p) {
            return x <= 0.0 ? 0.0 : -std::expm1(-p.rate * x);
          },
          [this, x](const auto&) {
            double total = 0.0;
            for (const auto& a : atoms()) {
              if (a.value <= x) total += a.probability;
            }
            return std::min(total, 1.0);
          }},
      params_);
}

double Distribution::cdf_left(double x) const {
  if (!is_discrete()) {
    return cdf(x);
  }
  double total = 0.0;
  for (const auto& a : atoms()) {
    if (a.value < x) total += a.probability;
  }
  return std::min(total, 1.0);
}

double Distribution::sample(RngStream& stream) const {
  return std::visit(
      Overloaded{
          [](const DegenerateParams& p) { return p.value; },
          [&stream](const NormalParams& p) {
            return p.mean + std::sqrt(p.variance) * stream.gaussian();
          },
          [&stream](const TwoPointParams& p) {
            return (stream.engine()() >> 63) != 0 ? p.mean + p.offset
                                                  : p.mean - p.offset;
          },
          [&stream](const ThreePointParams& p) {
            const double u = stream.uniform();
            if (u < 0.5 * p.spike) return p.mean - p.offset;
            if (u < p.spike) return p.mean + p.offset;
            return p.mean;
          },
          [&stream](const UniformParams& p) {
            return p.lower + (p.upper - p.lower) * stream.uniform();
          },
          [&stream](const ExponentialParams& p) {
            return -std::log1p(-stream.uniform()) / p.rate;
          }},
      params_);
}

std::string Distribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      Overloaded{
          [&os](const DegenerateParams& p) { os << "Degenerate(" << p.value << ")"; },
          [&os](const NormalParams& p) {
            os << "Normal(mean=" << p.mean << ", variance=" << p.variance << ")";
          },
          [&os](const TwoPointParams& p) {
            os << "TwoPoint(mean=" << p.mean << ", offset=" << p.offset << ")";
          },
          [&os](const ThreePointParams& p) {
            os << "ThreePoint(mean=" << p.mean << ", offset=" << p.offset
               << ", spike=" << p.spike << ")";
          },
          [&os](const UniformParams& p) {
            os << "Uniform(" << p.lower << ", " << p.upper << ")";
          },
          [&os](const ExponentialParams& p) { os << "Exponential(rate=" << p.rate << ")"; }},
      params_);
  return os.str();
}

}  // namespace clt
