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

#include "cltcheck/rng.hpp"

namespace clt {

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
  // Expanding through SplitMix64 never yields the all-zero state.
  std::uint64_t x = seed;
  for (auto& word : state_) {
    word = splitmix64(x);
    x += 0x9e3779b97f4a7c15ULL;
  }
}

}  // namespace clt
