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

#include "cuckoo/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <utility>

namespace cuckoo {
namespace {

/// Iterative Tarjan over literal nodes 2*i + side, where literal 2*i + s means
/// "item i sits in table s".
class SccSolver {
 public:
  explicit SccSolver(std::size_t literals) : adj_(literals) {}

  void implies(std::uint32_t from, std::uint32_t to) { adj_[from].push_back(to); }

  /// Component id per literal.
  std::vector<std::uint32_t> components() {
    const std::size_t count = adj_.size();
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    std::vector<std::uint32_t> index(count, kUnset), low(count, 0), comp(count, kUnset);
    std::vector<char> on_stack(count, 0);
    std::vector<std::uint32_t> stack;
    struct Frame {
      std::uint32_t node;
      std::size_t next;
    };
    std::vector<Frame> calls;
    std::uint32_t counter = 0;
    std::uint32_t comps = 0;

    for (std::uint32_t start = 0; start < count; ++start) {
      if (index[start] != kUnset) continue;
      calls.push_back({start, 0});
      index[start] = low[start] = counter++;
      stack.push_back(start);
      on_stack[start] = 1;
      while (!calls.empty()) {
        Frame& f = calls.back();
        const std::uint32_t u = f.node;
        if (f.next < adj_[u].size()) {
          const std::uint32_t w = adj_[u][f.next++];
          if (index[w] == kUnset) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = 1;
            calls.push_back({w, 0});
          } else if (on_stack[w]) {
            low[u] = std::min(low[u], index[w]);
          }
          continue;
        }
        if (low[u] == index[u]) {
          std::uint32_t w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = comps;
          } while (w != u);
          ++comps;
        }
        calls.pop_back();
        if (!calls.empty()) {
          const std::uint32_t parent = calls.back().node;
          low[parent] = std::min(low[parent], low[u]);
        }
      }
    }
    return comp;
  }

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
};

std::string side_string(const Placement& p) {
  std::string s;
  for (ItemIndex i = 0; i < p.size(); ++i) s += p.side(i) ? char('0' + index_of(*p.side(i))) : '-';
  return s;
}

}  // namespace

OracleVerdict brute_force_feasible(const Instance& inst, std::size_t cap) {
  const std::size_t n = inst.n();
  if (n > cap) {
    throw InvalidParameters("brute force oracle capped at n=" + std::to_string(cap) + ", got n=" +
                            std::to_string(n));
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  Placement p(n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    // Item 0 is the most significant bit, so masks ascend lexicographically.
    for (std::size_t i = 0; i < n; ++i) {
      p.assign(static_cast<ItemIndex>(i), side_from_index((mask >> (n - 1 - i)) & 1u));
    }
    if (is_legal(inst, p)) return {true, p};
  }
  return {false, std::nullopt};
}

bool implication_sat_feasible(const Instance& inst) {
  const std::size_t n = inst.n();
  SccSolver solver(2 * n);
  auto lit = [](std::size_t item, Side s) {
    return static_cast<std::uint32_t>(2 * item + index_of(s));
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<ItemIndex>(i);
    for (Side s : kBothSides) {
      // Unit clause: item i cannot use side s, so it must use the other.
      if (inst.has_self_duplicate(ii, s)) solver.implies(lit(i, s), lit(i, flip(s)));
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto jj = static_cast<ItemIndex>(j);
        if (!intersects(inst.slots(ii, s), inst.slots(jj, s))) continue;
        // Clause (not i@s) or (not j@s).
        solver.implies(lit(i, s), lit(j, flip(s)));
        solver.implies(lit(j, s), lit(i, flip(s)));
      }
    }
  }
  const auto comp = solver.components();
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[2 * i] == comp[2 * i + 1]) return false;
  }
  return true;
}

CrossValidation cross_validate(const Instance& inst, std::size_t cap) {
  return cross_validate(inst, build_graph(inst), cap);
}

CrossValidation cross_validate(const Instance& inst, const InferenceGraph& g, std::size_t cap) {
  CrossValidation cv;
  if (&g.instance() != &inst && !(g.instance() == inst)) {
    throw std::invalid_argument("graph was built for a different instance");
  }
  std::optional<Placement> brute_witness;
  if (inst.n() <= cap) {
    auto verdict = brute_force_feasible(inst, cap);
    cv.brute_force = verdict.feasible;
    brute_witness = std::move(verdict.witness);
  }
  cv.implication_sat = implication_sat_feasible(inst);
  const auto placed = place_all(inst);
  cv.place_all_succeeds = placed.has_value();
  cv.no_bad_item = !first_bad_item(g).has_value();

  const auto reference = build_graph(inst).edges();
  const auto actual = g.edges();
  // Both edge lists come out sorted by (from, to).
  auto arc_less = [](const Edge& a, const Edge& b) {
    return std::pair(a.from.index(), a.to.index()) < std::pair(b.from.index(), b.to.index());
  };
  std::set_difference(actual.begin(), actual.end(), reference.begin(), reference.end(),
                      std::back_inserter(cv.extra_edges), arc_less);
  std::set_difference(reference.begin(), reference.end(), actual.begin(), actual.end(),
                      std::back_inserter(cv.missing_edges), arc_less);

  std::vector<std::pair<const char*, bool>> verdicts;
  if (cv.brute_force) verdicts.emplace_back("brute_force", *cv.brute_force);
  verdicts.emplace_back("implication_sat", cv.implication_sat);
  verdicts.emplace_back("place_all", cv.place_all_succeeds);
  verdicts.emplace_back("no_bad_item", cv.no_bad_item);
  bool predicates_agree = true;
  for (const auto& [name, value] : verdicts) predicates_agree &= value == verdicts.front().second;

  bool witnesses_legal = true;
  if (brute_witness) witnesses_legal &= is_legal(inst, *brute_witness);
  if (placed) witnesses_legal &= is_legal(inst, *placed);

  cv.agree = predicates_agree && witnesses_legal && cv.extra_edges.empty() &&
             cv.missing_edges.empty();
  cv.vacuous = inst.n() == 0;

  if (cv.agree) {
    cv.report = cv.vacuous ? "agree (vacuous)\n"
                           : std::string("agree: ") +
                                 (verdicts.front().second ? "feasible" : "infeasible") + " (" +
                                 (cv.brute_force ? "three" : "two") + "-way)\n";
    if (placed) cv.report += "placement " + side_string(*placed) + "\n";
    return cv;
  }
  cv.report = "disagree\n";
  for (const auto& [name, value] : verdicts) {
    cv.report += std::string("  ") + name + ": " + (value ? "feasible" : "infeasible") + "\n";
  }
  if (!witnesses_legal) cv.report += "  a witness placement is illegal\n";
  for (const Edge& e : cv.missing_edges) {
    cv.report += "  missing edge " + to_string(e.from) + " -> " + to_string(e.to) + " (A" +
                 std::to_string(index_of(e.from.side)) + " slot " + std::to_string(e.slot) + ")\n";
  }
  for (const Edge& e : cv.extra_edges) {
    cv.report += "  unjustified edge " + to_string(e.from) + " -> " + to_string(e.to) + "\n";
  }
  cv.report += "instance:\n" + emit_instance(inst);
  return cv;
}

}  // namespace cuckoo
