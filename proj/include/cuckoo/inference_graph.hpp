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

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cuckoo/instance.hpp"
#include "cuckoo/placement.hpp"

namespace cuckoo {

/// Node a_i^σ: the event "item i is placed in table σ".
struct NodeId {
  ItemIndex item = 0;
  Side side = Side::kZero;

  constexpr std::uint32_t index() const noexcept { return 2 * item + index_of(side); }
  static constexpr NodeId from_index(std::uint32_t index) noexcept {
    return {index / 2, side_from_index(index % 2)};
  }
  /// Same item, other table.
  constexpr NodeId mirror() const noexcept { return {item, flip(side)}; }

  friend constexpr auto operator<=>(const NodeId&, const NodeId&) = default;
};

std::string to_string(NodeId v);

/// Directed inference a_i^σ -> a_j^{1-σ}, justified by a slot of table σ that
/// h_σ(x_i) and h_σ(x_j) share.
struct Edge {
  NodeId from;
  NodeId to;
  Slot slot = 0;

  friend constexpr bool operator==(const Edge&, const Edge&) = default;
};

/// Inference graph over the 2n nodes of an instance, stored as compressed
/// adjacency rows. Immutable after construction.
class InferenceGraph {
 public:
  /// Graph with exactly the given edges. Used for fixtures; build_graph is the
  /// normal entry point. Throws std::invalid_argument on out-of-range nodes.
  static InferenceGraph from_edges(const Instance& inst, std::vector<Edge> edges);

  const Instance& instance() const noexcept { return *inst_; }
  std::size_t node_count() const noexcept { return 2 * inst_->n(); }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  /// Successor node indices of `v`, ascending.
  std::span<const std::uint32_t> successors(NodeId v) const noexcept {
    return successors(v.index());
  }
  std::span<const std::uint32_t> successors(std::uint32_t index) const noexcept {
    return {targets_.data() + offsets_[index], offsets_[index + 1] - offsets_[index]};
  }

  bool has_edge(NodeId from, NodeId to) const noexcept;
  /// Shared slot recorded for an edge (the smallest one if several).
  std::optional<Slot> witness_slot(NodeId from, NodeId to) const noexcept;
  std::vector<Edge> edges() const;

  /// Copy of this graph with one edge removed.
  InferenceGraph without_edge(NodeId from, NodeId to) const;

 private:
  InferenceGraph(std::shared_ptr<const Instance> inst, std::vector<Edge> edges);

  std::shared_ptr<const Instance> inst_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<Slot> slots_;
};

/// Buckets items by slot per side; cost O(nd log nd + E).
///
/// For i != j there is an edge a_i^σ -> a_j^{1-σ} iff h_σ(x_i) and h_σ(x_j)
/// share a slot. An item whose own vector h_σ(x_i) repeats a slot gets the
/// self-inference edge a_i^σ -> a_i^{1-σ}.
InferenceGraph build_graph(const Instance& inst);

/// Nodes reachable from `v`, `v` included, in breadth-first order.
std::vector<NodeId> reachable_set(const InferenceGraph& g, NodeId v);

/// `v` is bad when its reachable set holds both nodes of some item (the root's
/// own item counts).
bool is_bad_node(const InferenceGraph& g, NodeId v);
bool is_bad_item(const InferenceGraph& g, ItemIndex item);

/// Lowest-index bad item, if any.
std::optional<ItemIndex> first_bad_item(const InferenceGraph& g);
/// All bad nodes, ascending by index.
std::vector<NodeId> bad_nodes(const InferenceGraph& g);

/// Simple path a_i^σ -> ... -> a_i^{1-σ} that meets every other item at most
/// once. `slots[k]` is the shared slot behind the hop nodes[k] -> nodes[k+1].
struct BadPathReport {
  NodeId root;
  std::vector<NodeId> nodes;
  std::vector<Slot> slots;

  std::size_t length() const noexcept { return slots.size(); }
};

enum class PathSearchStatus {
  kFound,
  kNotBad,
  /// Bad node, but every bad path from it revisits some item.
  kNoBasicPath,
  kBudgetExhausted,
};

struct PathSearchResult {
  PathSearchStatus status = PathSearchStatus::kNotBad;
  std::optional<BadPathReport> path;
  std::uint64_t edges_examined = 0;
};

inline constexpr std::uint64_t kDefaultPathSearchBudget = std::uint64_t{1} << 26;

/// Looks for a basic bad path rooted at `v`.
///
/// First the tree-splice construction: take a reachable pair {a_j^0, a_j^1}
/// whose breadth-first witness paths hold no other complete pair, and join the
/// path to a_j^γ with the mirror (reversed, sides flipped) of the path to
/// a_j^{1-γ}. If no splice is basic, the shortest v -> mirror(v) tree path is
/// tried, then an exhaustive item-disjoint depth-first search over nodes that
/// lie between v and mirror(v). `budget` caps edges examined by that search.
PathSearchResult search_basic_bad_path(const InferenceGraph& g, NodeId v,
                                       std::uint64_t budget = kDefaultPathSearchBudget);

/// Basic bad path rooted at `v`, or nothing when none exists. Throws
/// std::runtime_error if the default search budget runs out.
std::optional<BadPathReport> find_basic_bad_path(const InferenceGraph& g, NodeId v);

/// Checks a report against the instance alone: endpoints, side alternation,
/// item distinctness, and a real slot collision behind every hop. Returns a
/// description of the first violation.
std::optional<std::string> check_bad_path(const Instance& inst, const BadPathReport& path);

/// One hop per line: node, side, and the shared slot.
std::string format_bad_path(const BadPathReport& path);

/// Puts x_i in A_σ and every item reached from v on the side of the node
/// reached. Throws std::logic_error if `v` is bad.
Placement place_from(const InferenceGraph& g, NodeId v);

/// Called after every placement round with the placement so far and the items
/// placed in that round.
using PlacementObserver =
    std::function<void(const Placement& so_far, std::span<const ItemIndex> round)>;

/// Places every item or reports that some item is bad. Scans unplaced items in
/// index order, prefers side 0, places the reachable set of the first non-bad
/// side, and continues on the residual graph of the remaining items. The
/// residual graph is the subgraph of the full graph induced by unplaced items,
/// so it is traversed in place rather than rebuilt.
std::optional<Placement> place_all(const Instance& inst, const PlacementObserver& observer = {});
std::optional<Placement> place_all(const InferenceGraph& g, const PlacementObserver& observer = {});

/// Same algorithm, rebuilding the inference graph of the remaining items from
/// the instance every round.
std::optional<Placement> place_all_rebuilding(const Instance& inst,
                                              const PlacementObserver& observer = {});

}  // namespace cuckoo
