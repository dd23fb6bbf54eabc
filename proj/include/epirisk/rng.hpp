// Copyright 2026 The epirisk Authors
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

// Seeding and stream splitting.
//
// Two kinds of randomness are used. Graph generators consume a sequential
// engine (`Engine`, a 64-bit Mersenne twister) seeded through `split_seed`.
// The epidemic simulator instead draws every random variable from a
// counter-based hash of (seed, trial, variable kind, variable index), so the
// same variable gets the same uniform no matter which parameters or thread
// schedule are used. This is what makes paired comparisons across γ exact.

#ifndef EPIRISK_RNG_HPP_
#define EPIRISK_RNG_HPP_

#include <cstdint>
#include <random>

namespace epirisk {

using Engine = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent child seed for `stream` from `seed`.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0);

// Counter-based uniform in [0, 1) with 53 random bits.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t trial)
      : key_(split_seed(seed, trial)) {}

  constexpr double uniform(std::uint32_t kind, std::uint64_t index) const {
    std::uint64_t h = mix64(key_ ^ (static_cast<std::uint64_t>(kind) << 58));
    h = mix64(h ^ index);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

}  // namespace epirisk

#endif  // EPIRISK_RNG_HPP_
