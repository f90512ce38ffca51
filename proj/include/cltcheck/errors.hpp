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

#ifndef CLTCHECK_ERRORS_HPP_
#define CLTCHECK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace clt {

// Argument outside the operation's domain (negative s, empty sample, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The Lindeberg functional is undefined when the prefix total variance is 0.
class UndefinedFunctionalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// S_n cannot be normalized because B_n = 0.
class DegenerateNormalizationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Unknown fixture name; the message lists the registry.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace clt

#endif  // CLTCHECK_ERRORS_HPP_
