// Copyright 2026 The tritable Authors
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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tritable/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "tritable: triangle counting on a sorted key-value tablet engine"};
  app.require_subcommand(1);

  tritable::GenOptions gen;
  std::string gen_out;
  auto* cmd_gen = app.add_subcommand("gen", "generate a power-law edge list");
  cmd_gen->add_option("--scale", gen.spec.scale, "log2 of the vertex count")
      ->required();
  cmd_gen->add_option("--edge-factor", gen.spec.edge_factor,
                      "raw edges per vertex");
  cmd_gen->add_option("--seed", gen.spec.seed, "generator seed");
  cmd_gen->add_option("--prob-a", gen.spec.a, "quadrant probability a");
  cmd_gen->add_option("--prob-b", gen.spec.b, "quadrant probability b");
  cmd_gen->add_option("--prob-c", gen.spec.c, "quadrant probability c");
  cmd_gen->add_option("--prob-d", gen.spec.d, "quadrant probability d");
  cmd_gen->add_option("--out", gen_out, "output TSV path")->required();

  tritable::CountOptions count;
  std::string count_input;
  std::string count_out;
  std::string count_spill;
  auto* cmd_count =
      app.add_subcommand("count", "count triangles in a TSV edge list");
  cmd_count->add_option("input", count_input, "TSV edge list")->required();
  cmd_count
      ->add_option("--algo", count.algo, "adj | adjinc | hybrid | oracle")
      ->check(CLI::IsMember({"adj", "adjinc", "hybrid", "oracle"}));
  cmd_count->add_option("--tablets", count.tablets, "tablets per table");
  cmd_count->add_option("--threshold", count.threshold,
                        "hybrid degree threshold (integer, mean, or inf)");
  cmd_count->add_option("--reps", count.repetitions,
                        "repetitions; best time wins");
  cmd_count->add_option("--workers", count.workers,
                        "parallel workers (0 = hardware)");
  cmd_count
      ->add_option("--encoding", count.encoding,
                   "vertex encoding: fixed | decimal-string")
      ->check(CLI::IsMember({"fixed", "decimal-string"}));
  cmd_count->add_option("--out", count_out, "append a CSV row here");
  cmd_count->add_option("--spill-dir", count_spill,
                        "spill directory for large runs");

  tritable::BenchOptions bench;
  std::string bench_scales = "10-13";
  std::string bench_algos = "adj,adjinc";
  std::string bench_out;
  std::string bench_spill;
  auto* cmd_bench =
      app.add_subcommand("bench", "benchmark sweep over generated graphs");
  cmd_bench->add_option("--scales", bench_scales,
                        "scale list: 10-13 or 10,12");
  cmd_bench->add_option("--algos", bench_algos,
                        "comma-separated: adj,adjinc,hybrid,oracle");
  cmd_bench->add_option("--edge-factor", bench.edge_factor,
                        "raw edges per vertex");
  cmd_bench->add_option("--seed", bench.seed, "generator seed");
  cmd_bench->add_option("--tablets", bench.tablets, "tablets per table");
  cmd_bench->add_option("--threshold", bench.threshold,
                        "hybrid degree threshold");
  cmd_bench->add_option("--reps", bench.repetitions, "repetitions per cell");
  cmd_bench->add_option("--workers", bench.workers, "parallel workers");
  cmd_bench->add_option("--out", bench_out, "CSV output path");
  cmd_bench->add_option("--spill-dir", bench_spill,
                        "spill directory for large runs");

  tritable::StatsOptions stats;
  std::string stats_input;
  std::string stats_out;
  auto* cmd_stats = app.add_subcommand(
      "stats", "degree and per-tablet wedge-load skew report");
  cmd_stats->add_option("input", stats_input, "TSV edge list")->required();
  cmd_stats->add_option("--tablets", stats.tablets, "tablets per table");
  cmd_stats->add_option("--out", stats_out, "per-tablet load CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_gen) {
      gen.out = gen_out;
      tritable::run_gen(gen, std::cout);
    } else if (*cmd_count) {
      count.input = count_input;
      if (!count_out.empty()) count.out_csv = count_out;
      if (!count_spill.empty()) count.spill_dir = count_spill;
      tritable::run_count(count, std::cout);
    } else if (*cmd_bench) {
      bench.scales = tritable::parse_scales(bench_scales);
      bench.algos.clear();
      std::string token;
      for (char c : bench_algos + ",") {
        if (c == ',') {
          if (!token.empty()) bench.algos.push_back(token);
          token.clear();
        } else {
          token.push_back(c);
        }
      }
      if (!bench_out.empty()) bench.out_csv = bench_out;
      if (!bench_spill.empty()) bench.spill_dir = bench_spill;
      tritable::run_bench(bench, std::cout);
    } else if (*cmd_stats) {
      stats.input = stats_input;
      if (!stats_out.empty()) stats.out_csv = stats_out;
      tritable::run_stats(stats, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
