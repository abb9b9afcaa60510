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

#include "cuckoo/inference_graph.hpp"
#include "cuckoo/instance.hpp"
#include "cuckoo/placement.hpp"

namespace cuckoo {

inline constexpr std::size_t kDefaultBruteForceCap = 20;

struct OracleVerdict {
  bool feasible = false;
  /// Lexicographically first legal side assignment, when feasible.
  std::optional<Placement> witness;
};

/// Tries all 2^n side assignments in lexicographic order (item 0 most
/// significant, side 0 before side 1). Throws InvalidParameters above `cap`.
OracleVerdict brute_force_feasible(const Instance& inst, std::size_t cap = kDefaultBruteForceCap);

/// 2-SAT over "item i sits in table 1". Conflicting same-side pairs become
/// binary clauses and self-duplicate vectors unit clauses; satisfiability is
/// read off the strongly connected components of the implication graph. The
/// clauses come from a direct pairwise scan, not from build_graph.
bool implication_sat_feasible(const Instance& inst);

struct CrossValidation {
  bool agree = true;
  bool vacuous = false;
  /// Absent when n exceeds the brute-force cap.
  std::optional<bool> brute_force;
  bool implication_sat = false;
  bool place_all_succeeds = false;
  bool no_bad_item = false;
  /// Edges of the graph under test that build_graph would not produce, and
  /// edges it lacks.
  std::vector<Edge> extra_edges;
  std::vector<Edge> missing_edges;
  /// Human-readable summary, including the instance text on disagreement.
  std::string report;
};

/// Compares brute force (when n <= cap), implication-SAT, place_all and the
/// absence of bad items, all on the same instance.
CrossValidation cross_validate(const Instance& inst, std::size_t cap = kDefaultBruteForceCap);

/// Same, with "no bad item" judged on a caller-supplied graph. The graph is
/// also audited edge by edge against build_graph(inst).
CrossValidation cross_validate(const Instance& inst, const InferenceGraph& g,
                               std::size_t cap = kDefaultBruteForceCap);

}  // namespace cuckoo
