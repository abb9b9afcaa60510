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

#include <optional>
#include <string>
#include <vector>

#include "cuckoo/instance.hpp"

namespace cuckoo {

/// Side chosen for each item; an item without a side is unplaced.
class Placement {
 public:
  Placement() = default;
  explicit Placement(std::size_t n) : sides_(n) {}
  explicit Placement(std::vector<std::optional<Side>> sides) : sides_(std::move(sides)) {}

  /// Full placement from 0/1 side indices.
  static Placement from_indices(const std::vector<unsigned>& sides);

  std::size_t size() const noexcept { return sides_.size(); }
  const std::optional<Side>& side(ItemIndex item) const { return sides_.at(item); }
  void assign(ItemIndex item, Side s) { sides_.at(item) = s; }

  bool is_complete() const noexcept;
  std::size_t placed_count() const noexcept;

  friend bool operator==(const Placement&, const Placement&) = default;

 private:
  std::vector<std::optional<Side>> sides_;
};

/// Legality of a full placement: no (side, slot) pair is claimed twice, which
/// also rules out an item whose own d slots on its chosen side repeat.
/// Throws std::invalid_argument if `p` is incomplete or sized differently.
bool is_legal(const Instance& inst, const Placement& p);

/// Same rule restricted to the placed items of a partial placement.
bool is_legal_partial(const Instance& inst, const Placement& p);

/// (side, slot) -> item map of a legal placement.
class Occupancy {
 public:
  std::optional<ItemIndex> item_at(Side side, Slot slot) const;
  std::uint64_t m() const noexcept { return table_[0].size(); }

 private:
  friend std::optional<Occupancy> occupancy(const Instance&, const Placement&);
  static constexpr ItemIndex kEmpty = ~ItemIndex{0};
  std::vector<ItemIndex> table_[2];
};

/// Nothing if two placed copies share a slot.
std::optional<Occupancy> occupancy(const Instance& inst, const Placement& p);

/// One line per item: "item side slot...", or "item -" when unplaced.
std::string format_placement(const Instance& inst, const Placement& p);

}  // namespace cuckoo
