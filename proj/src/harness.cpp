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

#include "cuckoo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cuckoo/instance.hpp"

namespace cuckoo {
namespace {

struct TrialOutcome {
  bool failed = false;
  bool bad_item = false;
  PathLengthHistogram census;
};

TrialOutcome run_trial(const CellParams& cell, std::uint64_t m, Seed seed, std::uint64_t trial,
                       std::uint64_t path_budget) {
  const Instance inst = sample_instance(cell.n, m, cell.d, seed, trial);
  const InferenceGraph g = build_graph(inst);
  TrialOutcome out;
  const auto placement = place_all(g);
  out.failed = !placement.has_value();
  out.bad_item = first_bad_item(g).has_value();
  if (placement && !is_legal(inst, *placement)) {
    throw std::logic_error("place_all returned an illegal placement for trial " +
                           std::to_string(trial) + ":\n" + emit_instance(inst));
  }
  if (out.failed != out.bad_item) {
    throw std::logic_error("placement failure and bad-item detection disagree on trial " +
                           std::to_string(trial) + ":\n" + emit_instance(inst));
  }
  if (out.failed) out.census = path_length_histogram(g, path_budget);
  return out;
}

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(t) for t in [0, count) on `workers` threads; the first exception
/// is rethrown after all threads stop.
template <class Body>
void parallel_for(std::uint64_t count, unsigned workers, Body&& body) {
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, count)));
  if (workers <= 1) {
    for (std::uint64_t t = 0; t < count; ++t) body(t);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        if (stop.load(std::memory_order_relaxed)) return;
        const std::uint64_t t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= count) return;
        try {
          body(t);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          stop = true;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = double(trials);
  const double p = double(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

void PathLengthHistogram::merge(const PathLengthHistogram& other) {
  for (const auto& [len, count] : other.counts) counts[len] += count;
  no_basic_path += other.no_basic_path;
  undetermined += other.undetermined;
}

std::uint64_t PathLengthHistogram::total() const {
  std::uint64_t t = no_basic_path + undetermined;
  for (const auto& [len, count] : counts) t += count;
  return t;
}

PathLengthHistogram path_length_histogram(const InferenceGraph& g, std::uint64_t budget) {
  PathLengthHistogram h;
  for (NodeId v : bad_nodes(g)) {
    const auto r = search_basic_bad_path(g, v, budget);
    switch (r.status) {
      case PathSearchStatus::kFound:
        ++h.counts[r.path->length()];
        break;
      case PathSearchStatus::kNoBasicPath:
        ++h.no_basic_path;
        break;
      case PathSearchStatus::kBudgetExhausted:
        ++h.undetermined;
        break;
      case PathSearchStatus::kNotBad:
        throw std::logic_error("bad_nodes and search_basic_bad_path disagree on " + to_string(v));
    }
  }
  return h;
}

TrialSummary run_cell(const CellParams& cell, std::uint64_t trials, Seed master,
                      std::uint64_t cell_index, const RunOptions& options) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (cell.n == 0) throw std::invalid_argument("n must be at least 1");
  const std::uint64_t m = cell.m();
  const Seed seed = cell_seed(master, cell_index);

  std::vector<TrialOutcome> outcomes(trials);
  parallel_for(trials, resolve_workers(options.workers), [&](std::uint64_t t) {
    outcomes[t] = run_trial(cell, m, seed, t, options.path_budget);
  });

  TrialSummary s;
  s.cell = cell;
  s.m = m;
  s.trials = trials;
  for (const auto& o : outcomes) {
    s.failures += o.failed;
    s.bad_item_events += o.bad_item;
    s.census.merge(o.census);
  }
  s.rate = double(s.failures) / double(trials);
  s.ci = wilson_interval(s.failures, trials);
  s.bound = failure_bound(BoundParams::make(cell.n, m, cell.epsilon, cell.d, cell.rule));
  std::uint64_t paths = 0;
  double length_sum = 0.0;
  for (const auto& [len, count] : s.census.counts) {
    s.max_path_len = std::max(s.max_path_len, len);
    paths += count;
    length_sum += double(len) * double(count);
  }
  s.mean_path_len = paths == 0 ? 0.0 : length_sum / double(paths);
  return s;
}

void ExperimentConfig::validate() const {
  if (n_grid.empty() || epsilon_grid.empty() || d_grid.empty()) {
    throw std::invalid_argument("every parameter grid must be nonempty");
  }
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  for (auto n : n_grid) {
    if (n == 0) throw std::invalid_argument("n grid entries must be positive");
  }
  for (double e : epsilon_grid) {
    if (!(e > 0.0) || !std::isfinite(e)) throw std::invalid_argument("epsilon must be positive");
  }
  for (auto d : d_grid) {
    if (d == 0) throw std::invalid_argument("d grid entries must be positive");
  }
}

std::vector<CellParams> ExperimentConfig::cells() const {
  std::vector<CellParams> out;
  for (auto n : n_grid) {
    for (double e : epsilon_grid) {
      for (auto d : d_grid) out.push_back({n, e, d, rule});
    }
  }
  return out;
}

std::vector<TrialSummary> run_sweep(const ExperimentConfig& config) {
  config.validate();
  const auto cells = config.cells();
  std::vector<TrialSummary> rows;
  rows.reserve(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    rows.push_back(run_cell(cells[k], config.trials, config.seed, k, config.options));
  }
  return rows;
}

std::string csv_header() {
  return "n,m,d,epsilon,trials,failures,rate,ci_lo,ci_hi,bound,max_path_len,mean_path_len\n";
}

std::string csv_row(const TrialSummary& s) {
  return std::to_string(s.cell.n) + ',' + std::to_string(s.m) + ',' + std::to_string(s.cell.d) +
         ',' + format_g6(s.cell.epsilon) + ',' + std::to_string(s.trials) + ',' +
         std::to_string(s.failures) + ',' + format_g6(s.rate) + ',' + format_g6(s.ci.lo) + ',' +
         format_g6(s.ci.hi) + ',' + format_g6(s.bound) + ',' + std::to_string(s.max_path_len) +
         ',' + format_g6(s.mean_path_len) + '\n';
}

std::string to_csv(const std::vector<TrialSummary>& rows) {
  std::string out = csv_header();
  for (const auto& r : rows) out += csv_row(r);
  return out;
}

std::vector<TrialSummary> run_sweep_to_file(const ExperimentConfig& config,
                                            const std::string& path) {
  config.validate();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  auto rows = run_sweep(config);
  out << to_csv(rows);
  if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
  return rows;
}

std::vector<CellCensus> path_length_census(const ExperimentConfig& config) {
  std::vector<CellCensus> out;
  for (const auto& s : run_sweep(config)) out.push_back({s.cell, s.m, s.failures, s.census});
  return out;
}

std::string census_csv(const std::vector<CellCensus>& census) {
  std::string out = "n,m,d,epsilon,path_len,count\n";
  for (const auto& c : census) {
    const std::string prefix = std::to_string(c.cell.n) + ',' + std::to_string(c.m) + ',' +
                               std::to_string(c.cell.d) + ',' + format_g6(c.cell.epsilon) + ',';
    for (const auto& [len, count] : c.histogram.counts) {
      out += prefix + std::to_string(len) + ',' + std::to_string(count) + '\n';
    }
    if (c.histogram.no_basic_path != 0) {
      out += prefix + "none," + std::to_string(c.histogram.no_basic_path) + '\n';
    }
    if (c.histogram.undetermined != 0) {
      out += prefix + "undetermined," + std::to_string(c.histogram.undetermined) + '\n';
    }
  }
  return out;
}

}  // namespace cuckoo
