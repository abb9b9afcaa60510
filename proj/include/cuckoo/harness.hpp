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
#include <map>
#include <string>
#include <vector>

#include "cuckoo/bounds.hpp"
#include "cuckoo/inference_graph.hpp"
#include "cuckoo/rng.hpp"

namespace cuckoo {

/// One grid point of an experiment.
struct CellParams {
  std::uint64_t n = 1;
  double epsilon = 0.5;
  std::uint32_t d = 1;
  CapacityRule rule = CapacityRule::kClassic;

  std::uint64_t m() const { return capacity_for(n, epsilon, d, rule); }
};

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for `successes` out of `trials`; z defaults to the
/// two-sided 95% quantile.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959963984540054);

/// Histogram of basic bad path lengths, plus bad nodes that had no basic path
/// or whose search ran out of budget.
struct PathLengthHistogram {
  std::map<std::size_t, std::uint64_t> counts;
  std::uint64_t no_basic_path = 0;
  std::uint64_t undetermined = 0;

  void merge(const PathLengthHistogram& other);
  std::uint64_t total() const;
  bool empty() const { return counts.empty() && no_basic_path == 0 && undetermined == 0; }
};

/// Searches a basic bad path at every bad node of `g` and tallies lengths.
PathLengthHistogram path_length_histogram(const InferenceGraph& g,
                                          std::uint64_t budget = std::uint64_t{1} << 22);

struct TrialSummary {
  CellParams cell;
  std::uint64_t m = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t bad_item_events = 0;
  double rate = 0.0;
  WilsonInterval ci;
  double bound = 1.0;
  std::size_t max_path_len = 0;
  double mean_path_len = 0.0;
  PathLengthHistogram census;
};

struct RunOptions {
  /// 0 means std::thread::hardware_concurrency().
  unsigned workers = 1;
  std::uint64_t path_budget = std::uint64_t{1} << 22;
};

/// Samples `trials` instances for the cell, runs place_all on each and tallies
/// failures next to the independently detected bad-item trials. Trial t uses
/// sample_instance(..., cell_seed(master, cell_index), t), so results do not
/// depend on the worker count. Throws std::logic_error if a placement is
/// illegal or if failures and bad-item trials disagree on any trial.
TrialSummary run_cell(const CellParams& cell, std::uint64_t trials, Seed master,
                      std::uint64_t cell_index = 0, const RunOptions& options = {});

struct ExperimentConfig {
  std::vector<std::uint64_t> n_grid;
  std::vector<double> epsilon_grid;
  std::vector<std::uint32_t> d_grid{1};
  std::uint64_t trials = 1000;
  Seed seed;
  CapacityRule rule = CapacityRule::kClassic;
  RunOptions options;

  /// Throws std::invalid_argument on empty grids, zero trials or eps <= 0.
  void validate() const;
  /// Cartesian product in n-major, then epsilon, then d order.
  std::vector<CellParams> cells() const;
};

std::vector<TrialSummary> run_sweep(const ExperimentConfig& config);

/// Fixed header `n,m,d,epsilon,trials,failures,rate,ci_lo,ci_hi,bound,
/// max_path_len,mean_path_len`; floats printed with 6 significant digits.
std::string csv_header();
std::string csv_row(const TrialSummary& s);
std::string to_csv(const std::vector<TrialSummary>& rows);

/// Opens `path` before any trial runs so an unwritable target fails fast,
/// then writes the sweep CSV. Throws std::runtime_error if it cannot.
std::vector<TrialSummary> run_sweep_to_file(const ExperimentConfig& config, const std::string& path);

struct CellCensus {
  CellParams cell;
  std::uint64_t m = 0;
  std::uint64_t failures = 0;
  PathLengthHistogram histogram;
};

/// Path-length histograms over the failing trials of every cell.
std::vector<CellCensus> path_length_census(const ExperimentConfig& config);
/// Rows `n,m,d,epsilon,path_len,count`; bad nodes without a basic path are
/// listed under path_len "none", exhausted searches under "undetermined".
std::string census_csv(const std::vector<CellCensus>& census);

}  // namespace cuckoo
