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

#ifndef CLTCHECK_RNG_HPP_
#define CLTCHECK_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace clt {

// xoshiro256** 1.0 (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

// One step of SplitMix64; used both as a finalizer and to expand seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 64-bit FNV-1a, used to turn study names into stream ids.
constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Order-dependent combination of a parent seed with a child index. Every
// stream in a study is reached by chaining derive_seed, so any substream can
// be constructed in O(1) without touching its siblings:
//   row seed       = derive_seed(derive_seed(root, study), n)
//   replicate seed = derive_seed(row seed, replicate)
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t child) {
  return splitmix64(parent ^ splitmix64(child + 0x632be59bd9b4e019ULL));
}

struct StreamKey {
  std::uint64_t study = 0;
  std::uint64_t n = 0;
  std::uint64_t replicate = 0;
};

constexpr std::uint64_t row_seed(std::uint64_t root_seed, std::uint64_t study,
                                 std::uint64_t n) {
  return derive_seed(derive_seed(root_seed, study), n);
}

// Caller-owned random stream. Identical (root seed, key) pairs produce
// identical variate sequences regardless of which thread draws them.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}
  RngStream(std::uint64_t root_seed, const StreamKey& key)
      : RngStream(derive_seed(row_seed(root_seed, key.study, key.n),
                              key.replicate)) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() { return normal_(engine_); }

  Xoshiro256StarStar& engine() { return engine_; }

 private:
  Xoshiro256StarStar engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace clt

#endif  // CLTCHECK_RNG_HPP_
