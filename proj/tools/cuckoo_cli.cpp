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

// Command-line front end: instance generation, feasibility checks, oracles,
// bound tables and Monte Carlo sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cuckoo/bounds.hpp"
#include "cuckoo/harness.hpp"
#include "cuckoo/inference_graph.hpp"
#include "cuckoo/instance.hpp"
#include "cuckoo/oracles.hpp"

namespace {

using namespace cuckoo;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw std::runtime_error("cannot write '" + path + "'");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct SweepFlags {
  std::vector<std::uint64_t> n{1000};
  std::vector<double> eps{0.5};
  std::vector<std::uint32_t> d{1};
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string rule = "classic";
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "Item counts")->delimiter(',');
    cmd->add_option("--eps", eps, "Load slack values")->delimiter(',');
    cmd->add_option("--d", d, "Dimensions")->delimiter(',');
    cmd->add_option("--trials", trials, "Trials per cell")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");
    cmd->add_option("--capacity-rule", rule, "classic or dsq")
        ->check(CLI::IsMember({"classic", "dsq"}));
    cmd->add_option("--out", out, "Output file (default stdout)");
  }

  ExperimentConfig config() const {
    ExperimentConfig c;
    c.n_grid = n;
    c.epsilon_grid = eps;
    c.d_grid = d;
    c.trials = trials;
    c.seed = Seed{seed};
    c.rule = parse_capacity_rule(rule);
    c.options.workers = workers;
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cuckoo hashing placement through inference graphs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Sample an instance and print it");
  std::uint64_t gen_n = 10, gen_m = 0, gen_seed = 1, gen_trial = 0;
  std::uint32_t gen_d = 1;
  double gen_eps = 0.5;
  std::string gen_rule = "classic", gen_out;
  gen->add_option("--n", gen_n, "Item count");
  gen->add_option("--m", gen_m, "Slots per table (default: from --eps and --capacity-rule)");
  gen->add_option("--d", gen_d, "Dimension")->check(CLI::PositiveNumber);
  gen->add_option("--eps", gen_eps, "Load slack used when --m is absent");
  gen->add_option("--capacity-rule", gen_rule, "classic or dsq")
      ->check(CLI::IsMember({"classic", "dsq"}));
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--trial", gen_trial, "Trial index");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // check / place / oracle share an input argument.
  std::string input = "-";
  auto* check = app.add_subcommand("check", "Decide feasibility through bad-item detection");
  bool explain = false;
  check->add_option("input", input, "Instance file, or - for stdin");
  check->add_flag("--explain", explain, "Print basic bad paths for the first bad item");

  auto* place = app.add_subcommand("place", "Construct a legal placement");
  std::string place_out;
  place->add_option("input", input, "Instance file, or - for stdin");
  place->add_option("--out", place_out, "Output file (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "Cross-validate against the independent oracles");
  std::size_t cap = kDefaultBruteForceCap;
  oracle->add_option("input", input, "Instance file, or - for stdin");
  oracle->add_option("--cap", cap, "Largest n for brute force");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Print the closed-form bounds");
  std::uint64_t b_n = 1000, b_m = 0;
  std::uint32_t b_d = 1;
  double b_eps = 0.5;
  std::string b_rule = "classic";
  bounds->add_option("--n", b_n, "Item count")->check(CLI::PositiveNumber);
  bounds->add_option("--m", b_m, "Slots per table (default: from the capacity rule)");
  bounds->add_option("--d", b_d, "Dimension")->check(CLI::PositiveNumber);
  bounds->add_option("--eps", b_eps, "Load slack");
  bounds->add_option("--capacity-rule", b_rule, "classic or dsq")
      ->check(CLI::IsMember({"classic", "dsq"}));

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo sweep, CSV output");
  SweepFlags exp_flags;
  exp_flags.attach(experiment);

  auto* census = app.add_subcommand("census", "Basic bad path length histograms");
  SweepFlags census_flags;
  census_flags.attach(census);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto rule = parse_capacity_rule(gen_rule);
      const std::uint64_t m = gen_m != 0 ? gen_m : capacity_for(gen_n, gen_eps, gen_d, rule);
      write_output(gen_out,
                   emit_instance(sample_instance(gen_n, m, gen_d, Seed{gen_seed}, gen_trial)));
      return 0;
    }
    if (*check) {
      const Instance inst = parse_instance(read_input(input));
      const auto g = build_graph(inst);
      const auto bad = first_bad_item(g);
      if (!bad) {
        std::cout << "feasible: no bad item among " << inst.n() << "\n";
        return 0;
      }
      std::cout << "infeasible: item " << *bad << " is bad\n";
      if (explain) {
        for (Side s : kBothSides) {
          const NodeId v{*bad, s};
          const auto r = search_basic_bad_path(g, v);
          if (r.path) {
            std::cout << format_bad_path(*r.path);
          } else if (r.status == PathSearchStatus::kNoBasicPath) {
            std::cout << to_string(v) << " is bad but roots no basic bad path\n";
          } else {
            std::cout << to_string(v) << ": path search budget exhausted\n";
          }
        }
      }
      return 1;
    }
    if (*place) {
      const Instance inst = parse_instance(read_input(input));
      const auto p = place_all(inst);
      if (!p) {
        std::cerr << "infeasible: some item is bad\n";
        return 1;
      }
      write_output(place_out, format_placement(inst, *p));
      return 0;
    }
    if (*oracle) {
      const Instance inst = parse_instance(read_input(input));
      const auto cv = cross_validate(inst, cap);
      std::cout << cv.report;
      return cv.agree ? 0 : 1;
    }
    if (*bounds) {
      const auto rule = parse_capacity_rule(b_rule);
      const std::uint64_t m = b_m != 0 ? b_m : capacity_for(b_n, b_eps, b_d, rule);
      const auto p = BoundParams::make(b_n, m, b_eps, b_d, rule);
      std::ostringstream out;
      auto row = [&](const std::string& label, const std::string& value) {
        out << label << std::string(label.size() < 34 ? 34 - label.size() : 1, ' ') << value
            << "\n";
      };
      row("n", std::to_string(p.n));
      row("m", std::to_string(p.m));
      row("d", std::to_string(p.d));
      row("epsilon", format_double(p.epsilon));
      row("capacity rule", to_string(p.rule));
      row("edge probability (exact)", format_double(edge_probability(p)));
      row("edge probability cap d^2/m", format_double(double(p.d) * p.d / double(p.m)));
      row("basic bad path root (1+e)/(e m)", format_double(bad_path_root_bound(p)));
      row("bad item ((1+e)/e)^3 2/m^2", format_double(bad_item_bound(p)));
      row("failure 2(1+e)^2/e^3 / n", format_double(failure_bound(p)));
      for (std::uint64_t k = 1; k <= 5; ++k) {
        std::string count;
        try {
          count = std::to_string(labeled_path_count_bound(p.n, k));
        } catch (const std::overflow_error&) {
          count = "overflow";
        }
        row("labeled paths n^(k-1), k=" + std::to_string(k), count);
      }
      std::cout << out.str();
      return 0;
    }
    if (*experiment) {
      const auto config = exp_flags.config();
      if (exp_flags.out.empty()) {
        std::cout << to_csv(run_sweep(config));
      } else {
        run_sweep_to_file(config, exp_flags.out);
      }
      return 0;
    }
    if (*census) {
      const auto config = census_flags.config();
      config.validate();
      if (!census_flags.out.empty()) {
        std::ofstream probe(census_flags.out, std::ios::binary | std::ios::app);
        if (!probe) throw std::runtime_error("cannot open '" + census_flags.out + "' for writing");
      }
      write_output(census_flags.out, census_csv(path_length_census(config)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
