// Copyright 2026 The cuckoo-inference Authors
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

#pragma once

#include <cstdint>

namespace cuckoo {

/// Master seed for every random draw in an experiment.
struct Seed {
  std::uint64_t master = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// SplitMix64 finalizer (Steele, Lea, Flood). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Folds one more word into a running key.
constexpr std::uint64_t combine(std::uint64_t key, std::uint64_t word) noexcept {
  return mix64(key ^ mix64(word));
}

/// Counter-based SplitMix64 stream. The state is a plain counter, so a stream
/// is fully determined by the key it was started from.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t key) noexcept : state_(key) {}

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

 private:
  std::uint64_t state_;
};

/// Uniform draw from [0, bound) by rejection, with no modulo bias.
/// `bound` must be nonzero.
template <class Engine>
constexpr std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) noexcept {
  // Values below 2^64 mod bound are the biased remainder; reject them.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = engine();
    if (x >= threshold) return x % bound;
  }
}

/// Seed for the cell at `cell_index` of a sweep.
constexpr Seed cell_seed(Seed master, std::uint64_t cell_index) noexcept {
  return Seed{combine(mix64(master.master), cell_index)};
}

}  // namespace cuckoo
