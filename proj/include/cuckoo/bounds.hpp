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
#include <string>

namespace cuckoo {

/// How the table size follows from n, epsilon and d.
enum class CapacityRule {
  kClassic,    // m >= (1 + eps) n
  kDSquared,   // m >= (1 + eps) d^2 n
};

std::string to_string(CapacityRule rule);
/// Accepts "classic" and "dsq".
CapacityRule parse_capacity_rule(const std::string& text);

/// Smallest m satisfying the rule, i.e. ceil((1 + eps) n) or
/// ceil((1 + eps) d^2 n). Products within 1e-9 relative of an integer round
/// to it, so 1.5 * 1000 gives 1500 rather than 1501.
std::uint64_t capacity_for(std::uint64_t n, double epsilon, std::uint32_t d, CapacityRule rule);

/// Parameters for the closed-form bounds. Construct through make(), which
/// rejects epsilon <= 0 and any m below the selected capacity rule.
struct BoundParams {
  std::uint64_t n = 1;
  std::uint64_t m = 1;
  double epsilon = 1.0;
  std::uint32_t d = 1;
  CapacityRule rule = CapacityRule::kClassic;

  static BoundParams make(std::uint64_t n, std::uint64_t m, double epsilon, std::uint32_t d = 1,
                          CapacityRule rule = CapacityRule::kClassic);
  /// m taken from capacity_for.
  static BoundParams with_capacity(std::uint64_t n, double epsilon, std::uint32_t d = 1,
                                   CapacityRule rule = CapacityRule::kClassic);
};

/// (1 + eps) / (eps m): a fixed node roots a basic bad path with at most
/// this probability. Sum of (1/m) (1/(1+eps))^(k-1) over path lengths k >= 1.
double bad_path_root_bound(const BoundParams& p);

/// ((1 + eps) / eps)^3 * 2 / m^2, the per-item badness bound.
double bad_item_bound(const BoundParams& p);

/// min(1, 2 (1 + eps)^2 / eps^3 / n), the whole-table failure bound.
double failure_bound(const BoundParams& p);

/// Probability that an edge exists between two fixed distinct items on one
/// side: 1/m for d = 1, else the exact chance that two independent uniform
/// d-vectors over [m] share a coordinate. Never exceeds d^2 / m.
double edge_probability(std::uint64_t m, std::uint32_t d);
double edge_probability(const BoundParams& p);

/// n^(k-1), the count of labelings of a k-edge bad path with fixed endpoints.
/// Throws std::invalid_argument for k = 0 and std::overflow_error when the
/// result does not fit in 64 bits.
std::uint64_t labeled_path_count_bound(std::uint64_t n, std::uint64_t k);

}  // namespace cuckoo
