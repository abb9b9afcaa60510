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

#include "cuckoo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cuckoo {
namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be a positive finite number");
  }
}

double required_slots(std::uint64_t n, double epsilon, std::uint32_t d, CapacityRule rule) {
  const double dd = rule == CapacityRule::kDSquared ? double(d) * double(d) : 1.0;
  return (1.0 + epsilon) * dd * double(n);
}

}  // namespace

std::string to_string(CapacityRule rule) {
  return rule == CapacityRule::kClassic ? "classic" : "dsq";
}

CapacityRule parse_capacity_rule(const std::string& text) {
  if (text == "classic") return CapacityRule::kClassic;
  if (text == "dsq") return CapacityRule::kDSquared;
  throw std::invalid_argument("unknown capacity rule '" + text + "' (expected classic or dsq)");
}

std::uint64_t capacity_for(std::uint64_t n, double epsilon, std::uint32_t d, CapacityRule rule) {
  require_epsilon(epsilon);
  if (d == 0) throw std::invalid_argument("d must be positive");
  const double x = required_slots(n, epsilon, d, rule);
  const double nearest = std::round(x);
  const double m = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::ceil(x);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m));
}

BoundParams BoundParams::make(std::uint64_t n, std::uint64_t m, double epsilon, std::uint32_t d,
                              CapacityRule rule) {
  require_epsilon(epsilon);
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (d == 0) throw std::invalid_argument("d must be positive");
  if (m < capacity_for(n, epsilon, d, rule)) {
    throw std::invalid_argument("m=" + std::to_string(m) + " violates the " + to_string(rule) +
                                " capacity rule for n=" + std::to_string(n));
  }
  return BoundParams{n, m, epsilon, d, rule};
}

BoundParams BoundParams::with_capacity(std::uint64_t n, double epsilon, std::uint32_t d,
                                       CapacityRule rule) {
  return make(n, capacity_for(n, epsilon, d, rule), epsilon, d, rule);
}

double bad_path_root_bound(const BoundParams& p) {
  require_epsilon(p.epsilon);
  return std::min(1.0, (1.0 + p.epsilon) / (p.epsilon * double(p.m)));
}

double bad_item_bound(const BoundParams& p) {
  require_epsilon(p.epsilon);
  const double ratio = (1.0 + p.epsilon) / p.epsilon;
  const double m = double(p.m);
  return std::min(1.0, ratio * ratio * ratio * 2.0 / (m * m));
}

double failure_bound(const BoundParams& p) {
  require_epsilon(p.epsilon);
  const double e = p.epsilon;
  return std::min(1.0, 2.0 * (1.0 + e) * (1.0 + e) / (e * e * e) / double(p.n));
}

double edge_probability(std::uint64_t m, std::uint32_t d) {
  if (m == 0 || d == 0) throw std::invalid_argument("m and d must be positive");
  if (d == 1) return 1.0 / double(m);
  // distinct[s]: probability that the first vector has exactly s distinct
  // coordinates. The second vector misses all s of them with ((m-s)/m)^d.
  const long double mm = static_cast<long double>(m);
  const std::size_t top = static_cast<std::size_t>(std::min<std::uint64_t>(d, m));
  std::vector<long double> distinct(top + 1, 0.0L);
  distinct[0] = 1.0L;
  for (std::uint32_t draw = 0; draw < d; ++draw) {
    for (std::size_t s = std::min<std::size_t>(draw + 1, top); s >= 1; --s) {
      distinct[s] = distinct[s] * (s / mm) + distinct[s - 1] * ((mm - (s - 1)) / mm);
    }
    distinct[0] = 0.0L;
  }
  long double disjoint = 0.0L;
  for (std::size_t s = 1; s <= top; ++s) {
    disjoint += distinct[s] * std::pow((mm - s) / mm, static_cast<long double>(d));
  }
  return static_cast<double>(1.0L - disjoint);
}

double edge_probability(const BoundParams& p) { return edge_probability(p.m, p.d); }

std::uint64_t labeled_path_count_bound(std::uint64_t n, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("path length k must be at least 1");
  std::uint64_t count = 1;
  for (std::uint64_t e = 1; e < k; ++e) {
    if (n != 0 && count > std::numeric_limits<std::uint64_t>::max() / n) {
      throw std::overflow_error("n^(k-1) does not fit in 64 bits");
    }
    count *= n;
  }
  return count;
}

}  // namespace cuckoo
