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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cuckoo/rng.hpp"

namespace cuckoo {

using Slot = std::uint32_t;
using ItemIndex = std::uint32_t;

/// Which of the two tables an item copy lives in.
enum class Side : std::uint8_t { kZero = 0, kOne = 1 };

constexpr Side flip(Side s) noexcept { return s == Side::kZero ? Side::kOne : Side::kZero; }
constexpr unsigned index_of(Side s) noexcept { return static_cast<unsigned>(s); }
constexpr Side side_from_index(unsigned i) noexcept { return i == 0 ? Side::kZero : Side::kOne; }
inline constexpr Side kBothSides[] = {Side::kZero, Side::kOne};

/// Raised for bad sampling or construction parameters.
class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by parse_instance; `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// n items, two tables of m slots, and for every item and side a vector of d
/// slot indices. Immutable once built.
class Instance {
 public:
  /// `slots` is laid out item-major: for item i, the d coordinates of side 0
  /// followed by the d coordinates of side 1. Its size must be a multiple of
  /// 2d and every entry must be below m.
  Instance(std::uint64_t m, std::uint32_t d, std::vector<Slot> slots);

  std::size_t n() const noexcept { return n_; }
  std::uint64_t m() const noexcept { return m_; }
  std::uint32_t d() const noexcept { return d_; }

  std::span<const Slot> slots(ItemIndex item, Side side) const noexcept {
    return {slots_.data() + (std::size_t{item} * 2 + index_of(side)) * d_, d_};
  }

  /// True when h_side(item) repeats a coordinate. Only possible for d >= 2.
  bool has_self_duplicate(ItemIndex item, Side side) const noexcept;

  /// Instance restricted to `items`, renumbered in the given order.
  Instance subset(std::span<const ItemIndex> items) const;

  std::span<const Slot> raw() const noexcept { return slots_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::uint64_t m_;
  std::uint32_t d_;
  std::size_t n_;
  std::vector<Slot> slots_;
};

/// Slot vectors are multisets for conflict purposes: true if any coordinate of
/// `a` equals any coordinate of `b`.
bool intersects(std::span<const Slot> a, std::span<const Slot> b) noexcept;

/// Draws every one of the 2nd slot indices independently and uniformly from
/// [0, m). Each draw has its own counter-based stream keyed by
/// (seed, trial, item, side, coordinate), so the result does not depend on
/// generation order.
Instance sample_instance(std::size_t n, std::uint64_t m, std::uint32_t d, Seed seed,
                         std::uint64_t trial);

/// Single draw of the sampler above, exposed for tests and tools.
Slot sample_slot(std::uint64_t m, Seed seed, std::uint64_t trial, std::uint64_t item,
                 Side side, std::uint32_t coord) noexcept;

/// Text format: "n m d" header, then one line per item holding the d
/// coordinates of h_0 followed by the d coordinates of h_1.
Instance parse_instance(std::string_view text);
std::string emit_instance(const Instance& inst);

}  // namespace cuckoo
