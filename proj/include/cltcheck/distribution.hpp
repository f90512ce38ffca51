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

#ifndef CLTCHECK_DISTRIBUTION_HPP_
#define CLTCHECK_DISTRIBUTION_HPP_

#include <string>
#include <variant>
#include <vector>

#include "cltcheck/rng.hpp"

namespace clt {

enum class Kind { Degenerate, Normal, TwoPoint, ThreePoint, Uniform, Exponential };

std::string to_string(Kind kind);

// Parameter blocks, one per family. Construct through the Distribution
// factories, which validate them.
struct DegenerateParams {
  double value;
};
struct NormalParams {
  double mean;
  double variance;
};
// Atoms mean - offset and mean + offset, each with probability 1/2.
struct TwoPointParams {
  double mean;
  double offset;
};
// Atoms mean -/+ offset with probability spike/2 each, mean otherwise.
struct ThreePointParams {
  double mean;
  double offset;
  double spike;
};
struct UniformParams {
  double lower;
  double upper;
};
// Raw support [0, inf); mean 1/rate.
struct ExponentialParams {
  double rate;
};

struct Atom {
  double value;
  double probability;
};

// A real random variable with finite second moment. Immutable; cheap to copy.
class Distribution {
 public:
  using Params = std::variant<DegenerateParams, NormalParams, TwoPointParams,
                              ThreePointParams, UniformParams, ExponentialParams>;

  static Distribution degenerate(double value);
  static Distribution normal(double mean, double variance);
  static Distribution two_point(double mean, double offset);
  static Distribution three_point(double mean, double offset, double spike);
  static Distribution uniform(double lower, double upper);
  static Distribution exponential(double rate);

  Kind kind() const { return static_cast<Kind>(params_.index()); }
  const Params& params() const { return params_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  bool is_discrete() const;

  // Support points with positive probability; empty for continuous kinds.
  std::vector<Atom> atoms() const;

  // T(s) = E[(X - m)^2 ; |X - m| >= s]. The boundary is inclusive, so an atom
  // at distance exactly s counts. Throws DomainError for s < 0.
  double tail_second_moment(double s) const;

  // T(s) / T(0), evaluated without forming the variance, so it stays exact
  // for discrete kinds and meaningful when the variance underflows.
  // Degenerate kinds return 0.
  double tail_fraction(double s) const;

  // P(X <= x). The Normal kind uses std::erfc (glibc, correctly rounded to
  // within an ulp or two), well inside 1e-12 absolute error.
  double cdf(double x) const;
  // P(X < x); differs from cdf only at atoms.
  double cdf_left(double x) const;

  double sample(RngStream& stream) const;

  std::string describe() const;

 private:
  Distribution(Params params, double mean, double variance)
      : params_(params), mean_(mean), variance_(variance) {}

  Params params_;
  double mean_;
  double variance_;
};

// Standard normal CDF and upper tail via erfc.
double normal_cdf(double z);
double normal_upper_tail(double z);
double normal_pdf(double z);

}  // namespace clt

#endif  // CLTCHECK_DISTRIBUTION_HPP_
