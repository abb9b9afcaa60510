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

#include "cuckoo/inference_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace cuckoo {
namespace {

constexpr std::uint32_t kNoParent = ~std::uint32_t{0};

/// Breadth-first traversal with reusable stamp buffers. An optional `alive`
/// mask (per item) restricts the walk to an induced subgraph.
class Traversal {
 public:
  explicit Traversal(const InferenceGraph& g) : g_(g), stamp_(g.node_count(), 0) {
    parent_.resize(g.node_count(), kNoParent);
  }

  void set_alive(const std::vector<char>* alive) { alive_ = alive; }

  /// Full traversal from `root`; the visit order is left in order().
  void run(std::uint32_t root, bool track_parents) {
    begin(root, track_parents);
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const std::uint32_t u = order_[head];
      for (std::uint32_t w : g_.successors(u)) visit(u, w, track_parents);
    }
  }

  /// Stops as soon as both nodes of one item have been reached.
  bool reaches_complete_pair(std::uint32_t root) {
    begin(root, false);
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const std::uint32_t u = order_[head];
      for (std::uint32_t w : g_.successors(u)) {
        if (!visit(u, w, false)) continue;
        if (visited(w ^ 1u)) return true;
      }
    }
    return false;
  }

  bool visited(std::uint32_t v) const { return stamp_[v] == epoch_; }
  std::uint32_t parent(std::uint32_t v) const { return parent_[v]; }
  const std::vector<std::uint32_t>& order() const { return order_; }

  /// Root-to-`v` path in the breadth-first tree of the last tracked run.
  std::vector<std::uint32_t> tree_path(std::uint32_t v) const {
    std::vector<std::uint32_t> path;
    for (std::uint32_t u = v; u != kNoParent; u = parent_[u]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  void begin(std::uint32_t root, bool track_parents) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    order_.clear();
    stamp_[root] = epoch_;
    if (track_parents) parent_[root] = kNoParent;
    order_.push_back(root);
  }

  bool visit(std::uint32_t from, std::uint32_t w, bool track_parents) {
    if (stamp_[w] == epoch_) return false;
    if (alive_ != nullptr && !(*alive_)[w / 2]) return false;
    stamp_[w] = epoch_;
    if (track_parents) parent_[w] = from;
    order_.push_back(w);
    return true;
  }

  const InferenceGraph& g_;
  const std::vector<char>* alive_ = nullptr;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> order_;
  std::uint32_t epoch_ = 0;
};

void check_node(const InferenceGraph& g, NodeId v) {
  if (v.item >= g.instance().n()) throw std::out_of_range("node " + to_string(v) + " out of range");
}

/// Item-distinct, simple, and ends on the mirror of its root.
bool is_basic(const std::vector<std::uint32_t>& path, std::size_t n) {
  if (path.size() < 2) return false;
  if (path.back() != (path.front() ^ 1u)) return false;
  std::vector<char> seen(n, 0);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const std::uint32_t item = path[k] / 2;
    if (seen[item]) return false;
    seen[item] = 1;
  }
  return true;
}

BadPathReport make_report(const InferenceGraph& g, const std::vector<std::uint32_t>& path) {
  BadPathReport r;
  r.root = NodeId::from_index(path.front());
  r.nodes.reserve(path.size());
  for (std::uint32_t u : path) r.nodes.push_back(NodeId::from_index(u));
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    r.slots.push_back(*g.witness_slot(r.nodes[k], r.nodes[k + 1]));
  }
  return r;
}

/// Tree-splice candidates from the breadth-first tree held in `t`.
std::optional<std::vector<std::uint32_t>> splice_candidate(const Traversal& t, std::size_t n) {
  const auto& order = t.order();
  const std::uint32_t root = order.front();
  std::vector<std::size_t> rank(2 * n, order.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
  for (std::uint32_t w : order) {
    // Each complete pair once, at its later-discovered member.
    const std::uint32_t other = w ^ 1u;
    if (rank[other] >= rank[w]) continue;
    const auto to_w = t.tree_path(w);
    const auto to_other = t.tree_path(other);

    // Minimality: no other item has both nodes on the two witness paths.
    std::vector<std::uint32_t> on_paths(to_w);
    on_paths.insert(on_paths.end(), to_other.begin(), to_other.end());
    std::sort(on_paths.begin(), on_paths.end());
    on_paths.erase(std::unique(on_paths.begin(), on_paths.end()), on_paths.end());
    bool minimal = true;
    for (std::size_t k = 0; k + 1 < on_paths.size() && minimal; ++k) {
      const bool pair = (on_paths[k] ^ 1u) == on_paths[k + 1];
      if (pair && on_paths[k] / 2 != w / 2) minimal = false;
    }
    if (!minimal) continue;

    // root ~> w, then mirror(root ~> other) which runs w ~> mirror(root).
    std::vector<std::uint32_t> path = to_w;
    for (auto it = to_other.rbegin() + 1; it != to_other.rend(); ++it) path.push_back(*it ^ 1u);
    if (path.front() == root && is_basic(path, n)) return path;
  }
  return std::nullopt;
}

/// Exhaustive item-disjoint search for a path root -> mirror(root), confined
/// to nodes that are reachable from root and can reach mirror(root).
PathSearchResult exhaustive_search(const InferenceGraph& g, const Traversal& forward,
                                   std::uint32_t root, std::uint64_t budget) {
  const std::size_t n = g.instance().n();
  const std::uint32_t target = root ^ 1u;
  // u reaches mirror(root) iff root reaches mirror(u), by edge symmetry.
  auto useful = [&](std::uint32_t u) { return forward.visited(u) && forward.visited(u ^ 1u); };

  PathSearchResult result;
  std::vector<char> item_used(n, 0);
  std::vector<std::uint32_t> stamp(2 * n, 0);
  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> queue;
  // True iff target is reachable from start through items not on the stack.
  auto can_finish = [&](std::uint32_t start) {
    ++epoch;
    queue.assign(1, start);
    stamp[start] = epoch;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::uint32_t x : g.successors(queue[head])) {
        ++result.edges_examined;
        if (x == target) return true;
        if (stamp[x] == epoch || item_used[x / 2]) continue;
        stamp[x] = epoch;
        queue.push_back(x);
      }
    }
    return false;
  };
  struct Frame {
    std::uint32_t node;
    std::size_t next;
  };
  std::vector<Frame> stack{{root, 0}};
  item_used[root / 2] = 1;

  while (!stack.empty()) {
    Frame& top = stack.back();
    auto succ = g.successors(top.node);
    if (top.next == succ.size()) {
      item_used[top.node / 2] = 0;
      stack.pop_back();
      continue;
    }
    const std::uint32_t w = succ[top.next++];
    if (++result.edges_examined > budget) {
      result.status = PathSearchStatus::kBudgetExhausted;
      return result;
    }
    if (w == target) {
      std::vector<std::uint32_t> path;
      for (const Frame& f : stack) path.push_back(f.node);
      path.push_back(w);
      result.status = PathSearchStatus::kFound;
      result.path = make_report(g, path);
      return result;
    }
    if (item_used[w / 2] || !useful(w)) continue;
    item_used[w / 2] = 1;
    const bool viable = can_finish(w);
    if (result.edges_examined > budget) {
      result.status = PathSearchStatus::kBudgetExhausted;
      return result;
    }
    if (!viable) {
      item_used[w / 2] = 0;
      continue;
    }
    stack.push_back({w, 0});
  }
  result.status = PathSearchStatus::kNoBasicPath;
  return result;
}

}  // namespace

std::string to_string(NodeId v) {
  return "a_" + std::to_string(v.item) + "^" + std::to_string(index_of(v.side));
}

InferenceGraph::InferenceGraph(std::shared_ptr<const Instance> inst, std::vector<Edge> edges)
    : inst_(std::move(inst)) {
  const std::size_t nodes = 2 * inst_->n();
  for (const Edge& e : edges) {
    if (e.from.item >= inst_->n() || e.to.item >= inst_->n()) {
      throw std::invalid_argument("edge endpoint out of range");
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tuple(a.from.index(), a.to.index(), a.slot) <
           std::tuple(b.from.index(), b.to.index(), b.slot);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) {
                            return a.from == b.from && a.to == b.to;
                          }),
              edges.end());
  offsets_.assign(nodes + 1, 0);
  targets_.reserve(edges.size());
  slots_.reserve(edges.size());
  for (const Edge& e : edges) {
    ++offsets_[e.from.index() + 1];
    targets_.push_back(e.to.index());
    slots_.push_back(e.slot);
  }
  for (std::size_t k = 0; k < nodes; ++k) offsets_[k + 1] += offsets_[k];
}

InferenceGraph InferenceGraph::from_edges(const Instance& inst, std::vector<Edge> edges) {
  return InferenceGraph(std::make_shared<const Instance>(inst), std::move(edges));
}

bool InferenceGraph::has_edge(NodeId from, NodeId to) const noexcept {
  return witness_slot(from, to).has_value();
}

std::optional<Slot> InferenceGraph::witness_slot(NodeId from, NodeId to) const noexcept {
  if (from.item >= inst_->n() || to.item >= inst_->n()) return std::nullopt;
  const auto succ = successors(from);
  const auto it = std::lower_bound(succ.begin(), succ.end(), to.index());
  if (it == succ.end() || *it != to.index()) return std::nullopt;
  return slots_[offsets_[from.index()] + static_cast<std::size_t>(it - succ.begin())];
}

std::vector<Edge> InferenceGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(targets_.size());
  for (std::uint32_t u = 0; u + 1 < offsets_.size(); ++u) {
    for (std::uint32_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
      out.push_back({NodeId::from_index(u), NodeId::from_index(targets_[k]), slots_[k]});
    }
  }
  return out;
}

InferenceGraph InferenceGraph::without_edge(NodeId from, NodeId to) const {
  auto all = edges();
  std::erase_if(all, [&](const Edge& e) { return e.from == from && e.to == to; });
  return InferenceGraph(inst_, std::move(all));
}

InferenceGraph build_graph(const Instance& inst) {
  const std::size_t n = inst.n();
  std::vector<Edge> edges;
  std::vector<std::uint64_t> keyed;
  keyed.reserve(n * inst.d());
  std::vector<ItemIndex> bucket;
  for (Side side : kBothSides) {
    keyed.clear();
    for (ItemIndex i = 0; i < n; ++i) {
      for (Slot s : inst.slots(i, side)) keyed.push_back((std::uint64_t{s} << 32) | i);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t lo = 0; lo < keyed.size();) {
      const Slot slot = static_cast<Slot>(keyed[lo] >> 32);
      std::size_t hi = lo;
      bucket.clear();
      for (; hi < keyed.size() && static_cast<Slot>(keyed[hi] >> 32) == slot; ++hi) {
        const auto item = static_cast<ItemIndex>(keyed[hi] & 0xffffffffu);
        if (!bucket.empty() && bucket.back() == item) {
          // Repeated coordinate inside h_side(x_item).
          edges.push_back({{item, side}, {item, flip(side)}, slot});
        } else {
          bucket.push_back(item);
        }
      }
      for (ItemIndex a : bucket) {
        for (ItemIndex b : bucket) {
          if (a != b) edges.push_back({{a, side}, {b, flip(side)}, slot});
        }
      }
      lo = hi;
    }
  }
  return InferenceGraph::from_edges(inst, std::move(edges));
}

std::vector<NodeId> reachable_set(const InferenceGraph& g, NodeId v) {
  check_node(g, v);
  Traversal t(g);
  t.run(v.index(), false);
  std::vector<NodeId> out;
  out.reserve(t.order().size());
  for (std::uint32_t u : t.order()) out.push_back(NodeId::from_index(u));
  return out;
}

bool is_bad_node(const InferenceGraph& g, NodeId v) {
  check_node(g, v);
  Traversal t(g);
  return t.reaches_complete_pair(v.index());
}

bool is_bad_item(const InferenceGraph& g, ItemIndex item) {
  return is_bad_node(g, {item, Side::kZero}) && is_bad_node(g, {item, Side::kOne});
}

std::optional<ItemIndex> first_bad_item(const InferenceGraph& g) {
  Traversal t(g);
  for (ItemIndex i = 0; i < g.instance().n(); ++i) {
    if (t.reaches_complete_pair(2 * i) && t.reaches_complete_pair(2 * i + 1)) return i;
  }
  return std::nullopt;
}

std::vector<NodeId> bad_nodes(const InferenceGraph& g) {
  Traversal t(g);
  std::vector<NodeId> out;
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    if (t.reaches_complete_pair(u)) out.push_back(NodeId::from_index(u));
  }
  return out;
}

PathSearchResult search_basic_bad_path(const InferenceGraph& g, NodeId v, std::uint64_t budget) {
  check_node(g, v);
  const std::size_t n = g.instance().n();
  Traversal t(g);
  t.run(v.index(), true);

  PathSearchResult result;
  // Bad iff some complete pair is reached; then mirror(v) is reached too.
  bool bad = false;
  for (std::uint32_t u : t.order()) bad |= t.visited(u ^ 1u);
  if (!bad) return result;

  if (auto path = splice_candidate(t, n)) {
    result.status = PathSearchStatus::kFound;
    result.path = make_report(g, *path);
    return result;
  }
  const auto direct = t.tree_path(v.index() ^ 1u);
  if (is_basic(direct, n)) {
    result.status = PathSearchStatus::kFound;
    result.path = make_report(g, direct);
    return result;
  }
  return exhaustive_search(g, t, v.index(), budget);
}

std::optional<BadPathReport> find_basic_bad_path(const InferenceGraph& g, NodeId v) {
  auto r = search_basic_bad_path(g, v);
  if (r.status == PathSearchStatus::kBudgetExhausted) {
    throw std::runtime_error("basic bad path search from " + to_string(v) +
                             " exceeded its budget");
  }
  return std::move(r.path);
}

std::optional<std::string> check_bad_path(const Instance& inst, const BadPathReport& path) {
  const auto& nodes = path.nodes;
  if (nodes.size() < 2) return "path has fewer than two nodes";
  if (nodes.size() != path.slots.size() + 1) return "slot count does not match hop count";
  if (nodes.front() != path.root) return "path does not start at its root";
  if (nodes.back() != path.root.mirror()) return "path does not end at the root's mirror";
  std::vector<char> seen(inst.n(), 0);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].item >= inst.n()) return "node " + to_string(nodes[k]) + " out of range";
    if (k + 1 < nodes.size()) {
      if (seen[nodes[k].item]) return "item " + std::to_string(nodes[k].item) + " repeats";
      seen[nodes[k].item] = 1;
    }
  }
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const NodeId a = nodes[k];
    const NodeId b = nodes[k + 1];
    const std::string hop = to_string(a) + " -> " + to_string(b);
    if (b.side != flip(a.side)) return "hop " + hop + " does not alternate sides";
    const Slot s = path.slots[k];
    auto va = inst.slots(a.item, a.side);
    auto vb = inst.slots(b.item, a.side);
    if (a.item == b.item) {
      if (std::count(va.begin(), va.end(), s) < 2) {
        return "self hop " + hop + " has no repeated slot " + std::to_string(s);
      }
    } else if (std::find(va.begin(), va.end(), s) == va.end() ||
               std::find(vb.begin(), vb.end(), s) == vb.end()) {
      return "hop " + hop + " is not justified by shared slot " + std::to_string(s);
    }
  }
  return std::nullopt;
}

std::string format_bad_path(const BadPathReport& path) {
  std::string out = "bad path rooted at " + to_string(path.root) + ", length " +
                    std::to_string(path.length()) + "\n";
  for (std::size_t k = 0; k + 1 < path.nodes.size(); ++k) {
    const NodeId a = path.nodes[k];
    const NodeId b = path.nodes[k + 1];
    out += "  item " + std::to_string(a.item) + " side " + std::to_string(index_of(a.side)) +
           " -> item " + std::to_string(b.item) + " side " + std::to_string(index_of(b.side)) +
           "  (shared A" + std::to_string(index_of(a.side)) + " slot " +
           std::to_string(path.slots[k]) + ")\n";
  }
  return out;
}

Placement place_from(const InferenceGraph& g, NodeId v) {
  check_node(g, v);
  Traversal t(g);
  if (t.reaches_complete_pair(v.index())) {
    throw std::logic_error("place_from called on bad node " + to_string(v));
  }
  Placement p(g.instance().n());
  for (std::uint32_t u : t.order()) {
    const NodeId w = NodeId::from_index(u);
    p.assign(w.item, w.side);
  }
  return p;
}

std::optional<Placement> place_all(const Instance& inst, const PlacementObserver& observer) {
  return place_all(build_graph(inst), observer);
}

std::optional<Placement> place_all(const InferenceGraph& g, const PlacementObserver& observer) {
  const std::size_t n = g.instance().n();
  std::vector<char> alive(n, 1);
  Traversal t(g);
  t.set_alive(&alive);
  Placement p(n);
  std::vector<ItemIndex> round;
  for (ItemIndex i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    bool placed = false;
    for (Side side : kBothSides) {
      const std::uint32_t root = NodeId{i, side}.index();
      if (t.reaches_complete_pair(root)) continue;
      round.clear();
      for (std::uint32_t u : t.order()) {
        const NodeId w = NodeId::from_index(u);
        p.assign(w.item, w.side);
        alive[w.item] = 0;
        round.push_back(w.item);
      }
      placed = true;
      break;
    }
    if (!placed) return std::nullopt;
    if (observer) observer(p, round);
  }
  return p;
}

std::optional<Placement> place_all_rebuilding(const Instance& inst,
                                              const PlacementObserver& observer) {
  std::vector<ItemIndex> remaining(inst.n());
  for (ItemIndex i = 0; i < inst.n(); ++i) remaining[i] = i;
  Placement p(inst.n());
  std::vector<ItemIndex> round;
  while (!remaining.empty()) {
    const InferenceGraph residual = build_graph(inst.subset(remaining));
    std::optional<Placement> local;
    for (Side side : kBothSides) {
      if (!is_bad_node(residual, {0, side})) {
        local = place_from(residual, {0, side});
        break;
      }
    }
    if (!local) return std::nullopt;
    round.clear();
    std::vector<ItemIndex> next;
    for (ItemIndex k = 0; k < remaining.size(); ++k) {
      if (const auto& s = local->side(k)) {
        p.assign(remaining[k], *s);
        round.push_back(remaining[k]);
      } else {
        next.push_back(remaining[k]);
      }
    }
    remaining = std::move(next);
    if (observer) observer(p, round);
  }
  return p;
}

}  // namespace cuckoo
