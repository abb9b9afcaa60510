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

#include "cuckoo/placement.hpp"

#include <algorithm>
#include <stdexcept>

namespace cuckoo {
namespace {

bool conflict_free(const Instance& inst, const Placement& p) {
  if (p.size() != inst.n()) throw std::invalid_argument("placement size does not match instance");
  // Sorted (side, slot) keys; no O(m) scratch table.
  std::vector<std::uint64_t> claimed;
  claimed.reserve(inst.n() * inst.d());
  for (ItemIndex i = 0; i < inst.n(); ++i) {
    const auto& s = p.side(i);
    if (!s) continue;
    for (Slot v : inst.slots(i, *s)) claimed.push_back((std::uint64_t{index_of(*s)} << 32) | v);
  }
  std::sort(claimed.begin(), claimed.end());
  return std::adjacent_find(claimed.begin(), claimed.end()) == claimed.end();
}

}  // namespace

Placement Placement::from_indices(const std::vector<unsigned>& sides) {
  Placement p(sides.size());
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (sides[i] > 1) throw std::invalid_argument("side index must be 0 or 1");
    p.assign(static_cast<ItemIndex>(i), side_from_index(sides[i]));
  }
  return p;
}

bool Placement::is_complete() const noexcept {
  return std::all_of(sides_.begin(), sides_.end(), [](const auto& s) { return s.has_value(); });
}

std::size_t Placement::placed_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(sides_.begin(), sides_.end(), [](const auto& s) { return s.has_value(); }));
}

bool is_legal(const Instance& inst, const Placement& p) {
  if (!p.is_complete()) throw std::invalid_argument("is_legal requires every item to be placed");
  return conflict_free(inst, p);
}

bool is_legal_partial(const Instance& inst, const Placement& p) { return conflict_free(inst, p); }

std::optional<ItemIndex> Occupancy::item_at(Side side, Slot slot) const {
  const ItemIndex v = table_[index_of(side)].at(slot);
  if (v == kEmpty) return std::nullopt;
  return v;
}

std::optional<Occupancy> occupancy(const Instance& inst, const Placement& p) {
  if (p.size() != inst.n()) throw std::invalid_argument("placement size does not match instance");
  Occupancy occ;
  for (auto& t : occ.table_) t.assign(inst.m(), Occupancy::kEmpty);
  for (ItemIndex i = 0; i < inst.n(); ++i) {
    const auto& s = p.side(i);
    if (!s) continue;
    auto& table = occ.table_[index_of(*s)];
    for (Slot v : inst.slots(i, *s)) {
      if (table[v] != Occupancy::kEmpty) return std::nullopt;
      table[v] = i;
    }
  }
  return occ;
}

std::string format_placement(const Instance& inst, const Placement& p) {
  std::string out;
  for (ItemIndex i = 0; i < p.size(); ++i) {
    out += std::to_string(i);
    const auto& s = p.side(i);
    if (!s) {
      out += " -\n";
      continue;
    }
    out += ' ';
    out += std::to_string(index_of(*s));
    for (Slot v : inst.slots(i, *s)) {
      out += ' ';
      out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace cuckoo
