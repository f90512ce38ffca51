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

#include "cltcheck/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "cltcheck/errors.hpp"

namespace clt {

double alpha(const Distribution& d, double s) {
  if (!(s >= 0.0)) {
    throw DomainError("alpha: s must be nonnegative");
  }
  if (d.kind() == Kind::Degenerate) {
    return 0.0;
  }
  return std::clamp(d.tail_fraction(s), 0.0, 1.0);
}

std::string to_string(UniformConvergence verdict) {
  switch (verdict) {
    case UniformConvergence::HoldsCertified: return "HoldsCertified";
    case UniformConvergence::HoldsOnPrefix: return "HoldsOnPrefix";
    case UniformConvergence::Fails: return "Fails";
    case UniformConvergence::SingularTrivial: return "SingularTrivial";
    case UniformConvergence::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(Singularity verdict) {
  switch (verdict) {
    case Singularity::Singular: return "Singular";
    case Singularity::NonSingular: return "NonSingular";
    case Singularity::SingularOnPrefix: return "SingularOnPrefix";
  }
  return "SingularOnPrefix";
}

AlphaProfile check_uniform_convergence(const RandomSequence& seq,
                                       std::span<const double> s_grid,
                                       std::size_t prefix, double tol) {
  if (s_grid.empty()) {
    throw DomainError("alpha profile needs a nonempty s grid");
  }
  for (std::size_t j = 0; j + 1 < s_grid.size(); ++j) {
    if (!(s_grid[j] < s_grid[j + 1])) {
      throw DomainError("s grid must be strictly increasing");
    }
  }
  if (!(s_grid.front() >= 0.0)) {
    throw DomainError("s grid must be nonnegative");
  }
  if (prefix == 0) {
    throw DomainError("alpha profile needs a prefix N >= 1");
  }
  if (!(tol > 0.0)) {
    throw DomainError("tolerance must be positive");
  }

  AlphaProfile profile;
  profile.s_grid.assign(s_grid.begin(), s_grid.end());
  profile.tolerance = tol;
  const std::size_t columns = s_grid.size();
  profile.sup_row.assign(columns, 0.0);

  bool all_degenerate = true;
  profile.values.reserve(prefix);
  for (std::size_t n = 1; n <= prefix; ++n) {
    const Distribution d = seq.term(n);
    all_degenerate = all_degenerate && d.kind() == Kind::Degenerate;
    std::vector<double> row(columns);
    for (std::size_t j = 0; j < columns; ++j) {
      row[j] = alpha(d, s_grid[j]);
      profile.sup_row[j] = std::max(profile.sup_row[j], row[j]);
    }
    profile.values.push_back(std::move(row));
  }

  // A full period beyond the prefix makes the column supremum exact.
  if (seq.period && *seq.period > prefix) {
    for (std::size_t n = prefix + 1; n <= *seq.period; ++n) {
      const Distribution d = seq.term(n);
      all_degenerate = all_degenerate && d.kind() == Kind::Degenerate;
      for (std::size_t j = 0; j < columns; ++j) {
        profile.sup_row[j] = std::max(profile.sup_row[j], alpha(d, s_grid[j]));
      }
    }
  }

  if (seq.has_envelope()) {
    std::vector<double> env(columns);
    std::transform(s_grid.begin(), s_grid.end(), env.begin(), seq.envelope);
    profile.envelope_row = std::move(env);
  }

  const double s_max = s_grid.back();
  const bool periodic_exact = seq.period && prefix % *seq.period == 0;
  if (all_degenerate) {
    profile.verdict = UniformConvergence::SingularTrivial;
  } else if (seq.witness && seq.witness->floor > 0.0 &&
             alpha(seq.term(seq.witness->index(s_max)), s_max) >= seq.witness->floor) {
    profile.verdict = UniformConvergence::Fails;
  } else if ((seq.has_envelope() && seq.envelope(s_max) <= tol) ||
             (periodic_exact && profile.sup_row.back() <= tol)) {
    profile.verdict = UniformConvergence::HoldsCertified;
  } else if (profile.sup_row.back() <= tol) {
    profile.verdict = UniformConvergence::HoldsOnPrefix;
  } else {
    profile.verdict = UniformConvergence::Inconclusive;
  }
  return profile;
}

SingularityReport classify_singularity(const RandomSequence& seq, std::size_t prefix) {
  const auto singular_kind = [](Kind k) {
    return k == Kind::Degenerate || k == Kind::Normal;
  };
  SingularityReport report;
  const std::size_t scan = seq.period ? std::max(prefix, *seq.period) : prefix;
  for (std::size_t n = 1; n <= scan; ++n) {
    if (!singular_kind(seq.term(n).kind())) {
      report.verdict = Singularity::NonSingular;
      report.witness = n;
      return report;
    }
  }
  report.verdict = seq.period ? Singularity::Singular : Singularity::SingularOnPrefix;
  return report;
}

namespace {

double checked_scale(std::span<const Distribution> terms, double eps) {
  if (!(eps > 0.0)) {
    throw DomainError("eps must be positive");
  }
  const auto stats = total_variance(terms);
  if (!(stats.total_variance > 0.0)) {
    throw UndefinedFunctionalError("Lindeberg functional undefined: B_n^2 = 0");
  }
  return stats.total_variance;
}

}  // namespace

double lindeberg_functional(std::span<const Distribution> terms, double eps) {
  const double b2 = checked_scale(terms, eps);
  const double threshold = eps * std::sqrt(b2);
  std::vector<double> truncated;
  truncated.reserve(terms.size());
  for (const auto& d : terms) {
    truncated.push_back(d.variance() * alpha(d, threshold));
  }
  return compensated_sum(truncated) / b2;
}

double lindeberg_functional(const RandomSequence& seq, std::size_t n, double eps) {
  if (n == 0) {
    throw DomainError("n must be >= 1");
  }
  const auto terms = seq.terms(n);
  return lindeberg_functional(terms, eps);
}

LindebergBound lindeberg_upper_bound(std::span<const Distribution> terms, double eps,
                                     const RandomSequence* seq) {
  const double b2 = checked_scale(terms, eps);
  const double threshold = eps * std::sqrt(b2);
  LindebergBound bound;
  for (const auto& d : terms) {
    bound.prefix_sup = std::max(bound.prefix_sup, alpha(d, threshold));
  }
  if (seq != nullptr && seq->has_envelope()) {
    bound.envelope = seq->envelope(threshold);
  }
  return bound;
}

LindebergBound lindeberg_upper_bound(const RandomSequence& seq, std::size_t n,
                                     double eps) {
  if (n == 0) {
    throw DomainError("n must be >= 1");
  }
  const auto terms = seq.terms(n);
  return lindeberg_upper_bound(terms, eps, &seq);
}

}  // namespace clt
