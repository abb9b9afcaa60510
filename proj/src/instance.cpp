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

#include "cuckoo/instance.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace cuckoo {
namespace {

constexpr std::uint64_t kMaxSlots = std::uint64_t{std::numeric_limits<Slot>::max()} + 1;

void check_shape(std::uint64_t m, std::uint32_t d) {
  if (m == 0) throw InvalidParameters("m must be positive");
  if (m > kMaxSlots) throw InvalidParameters("m exceeds the 32-bit slot range");
  if (d == 0) throw InvalidParameters("d must be positive");
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

std::uint64_t parse_uint(std::string_view field, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line, std::string("expected non-negative integer for ") + what + ", got '" +
                               std::string(field) + "'");
  }
  return value;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(what + " at line " + std::to_string(line)), line_(line) {}

Instance::Instance(std::uint64_t m, std::uint32_t d, std::vector<Slot> slots)
    : m_(m), d_(d), n_(0), slots_(std::move(slots)) {
  check_shape(m, d);
  if (slots_.size() % (std::size_t{2} * d) != 0) {
    throw InvalidParameters("slot vector length is not a multiple of 2d");
  }
  n_ = slots_.size() / (std::size_t{2} * d);
  for (Slot s : slots_) {
    if (s >= m) {
      throw InvalidParameters("slot index " + std::to_string(s) + " >= m=" + std::to_string(m));
    }
  }
}

bool Instance::has_self_duplicate(ItemIndex item, Side side) const noexcept {
  auto v = slots(item, side);
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      if (v[a] == v[b]) return true;
    }
  }
  return false;
}

Instance Instance::subset(std::span<const ItemIndex> items) const {
  std::vector<Slot> out;
  out.reserve(items.size() * 2 * d_);
  for (ItemIndex i : items) {
    for (Side s : kBothSides) {
      auto v = slots(i, s);
      out.insert(out.end(), v.begin(), v.end());
    }
  }
  return Instance(m_, d_, std::move(out));
}

bool intersects(std::span<const Slot> a, std::span<const Slot> b) noexcept {
  for (Slot x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  }
  return false;
}

Slot sample_slot(std::uint64_t m, Seed seed, std::uint64_t trial, std::uint64_t item, Side side,
                 std::uint32_t coord) noexcept {
  std::uint64_t key = combine(mix64(seed.master), trial);
  key = combine(key, item);
  key = combine(key, (std::uint64_t{index_of(side)} << 32) | coord);
  SplitMix64 stream(key);
  return static_cast<Slot>(uniform_below(stream, m));
}

Instance sample_instance(std::size_t n, std::uint64_t m, std::uint32_t d, Seed seed,
                         std::uint64_t trial) {
  check_shape(m, d);
  std::vector<Slot> slots(n * 2 * d);
  // Same keying as sample_slot, with the per-trial and per-item prefixes hoisted.
  const std::uint64_t trial_key = combine(mix64(seed.master), trial);
  std::size_t out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t item_key = combine(trial_key, i);
    for (unsigned s = 0; s < 2; ++s) {
      for (std::uint32_t c = 0; c < d; ++c) {
        SplitMix64 stream(combine(item_key, (std::uint64_t{s} << 32) | c));
        slots[out++] = static_cast<Slot>(uniform_below(stream, m));
      }
    }
  }
  return Instance(m, d, std::move(slots));
}

Instance parse_instance(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.empty()) throw ParseError(1, "missing header 'n m d'");

  auto header = split_fields(lines[0]);
  if (header.size() != 3) {
    throw ParseError(1, "malformed header: expected 'n m d', got " +
                            std::to_string(header.size()) + " fields");
  }
  const std::uint64_t n = parse_uint(header[0], 1, "n");
  const std::uint64_t m = parse_uint(header[1], 1, "m");
  const std::uint64_t d = parse_uint(header[2], 1, "d");
  if (m == 0) throw ParseError(1, "malformed header: m must be positive");
  if (m > kMaxSlots) throw ParseError(1, "malformed header: m exceeds the 32-bit slot range");
  if (d == 0 || d > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError(1, "malformed header: d must be a positive 32-bit integer");
  }

  std::vector<Slot> slots;
  slots.reserve(n * 2 * d);
  std::size_t line_no = 1;
  std::uint64_t items_read = 0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    line_no = k + 1;
    auto fields = split_fields(lines[k]);
    if (fields.empty()) {
      // Blank lines are only tolerated at the very end.
      bool rest_blank = true;
      for (std::size_t r = k; r < lines.size(); ++r) rest_blank &= split_fields(lines[r]).empty();
      if (rest_blank) break;
      throw ParseError(line_no, "unexpected blank line");
    }
    if (items_read == n) {
      throw ParseError(line_no, "more item lines than the header's n=" + std::to_string(n));
    }
    if (fields.size() != 2 * d) {
      throw ParseError(line_no, "expected " + std::to_string(2 * d) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    for (auto f : fields) {
      const std::uint64_t v = parse_uint(f, line_no, "slot index");
      if (v >= m) {
        throw ParseError(line_no,
                         "index " + std::to_string(v) + " ≥ m=" + std::to_string(m));
      }
      slots.push_back(static_cast<Slot>(v));
    }
    ++items_read;
  }
  if (items_read != n) {
    throw ParseError(line_no + 1, "expected " + std::to_string(n) + " item lines, got " +
                                      std::to_string(items_read));
  }
  return Instance(m, static_cast<std::uint32_t>(d), std::move(slots));
}

std::string emit_instance(const Instance& inst) {
  std::string out = std::to_string(inst.n()) + ' ' + std::to_string(inst.m()) + ' ' +
                    std::to_string(inst.d()) + '\n';
  for (ItemIndex i = 0; i < inst.n(); ++i) {
    bool first = true;
    for (Side s : kBothSides) {
      for (Slot v : inst.slots(i, s)) {
        if (!first) out += ' ';
        out += std::to_string(v);
        first = false;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace cuckoo
