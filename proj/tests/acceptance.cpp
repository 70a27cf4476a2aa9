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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "testutil.hpp"
#include "tritable/commands.hpp"
#include "tritable/generator.hpp"
#include "tritable/metrics.hpp"
#include "tritable/oracle.hpp"
#include "tritable/tricount.hpp"

using namespace tritable;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& message) { g_notes.push_back(message); }

double run_criterion(const char* name, bool (*fn)()) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  g_notes.clear();
  try {
    ok = fn();
  } catch (const std::exception& e) {
    note(std::string("exception: ") + e.what());
    ok = false;
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  for (const std::string& message : g_notes) {
    std::printf("       | %s\n", message.c_str());
  }
  std::printf("[%s] %s (%.1fs)\n", ok ? "PASS" : "FAIL", name, secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
  return secs;
}

EngineConfig scratch_config(const std::filesystem::path& spill) {
  EngineConfig config;
  config.spill_dir = spill;
  config.spill_min_bytes = 1u << 20;
  return config;
}

struct PipelineCounts {
  std::uint64_t adj = 0;
  std::uint64_t adjinc = 0;
  std::uint64_t hybrid = 0;
  std::uint64_t adj_nppf = 0;
  std::uint64_t adjinc_nppf = 0;
  double max_runtime = 0.0;  // slowest single pipeline, build excluded
};

PipelineCounts run_all_pipelines(const EdgeList& g, std::size_t tablets,
                                 std::uint64_t hybrid_threshold,
                                 const EngineConfig& config,
                                 unsigned workers = 0) {
  Engine engine(config);
  build_upper_adjacency(g, engine, tablets, "up");
  build_lower_adjacency(g, engine, tablets, "low");
  build_incidence(g, engine, tablets, "e");
  PipelineOptions options;
  options.workers = workers;
  PipelineCounts counts;
  auto adj = count_adjacency_only(engine, "up", options);
  auto adjinc = count_adj_incidence(engine, "low", "e", options);
  auto hybrid = count_hybrid(engine, "up", hybrid_threshold, options);
  counts.adj = adj.triangles;
  counts.adjinc = adjinc.triangles;
  counts.hybrid = hybrid.triangles;
  counts.adj_nppf = adj.nppf;
  counts.adjinc_nppf = adjinc.nppf;
  counts.max_runtime =
      std::max({adj.runtime_seconds(), adjinc.runtime_seconds(),
                hybrid.runtime_seconds()});
  return counts;
}

std::uint64_t choose3(std::uint64_t n) {
  return n * (n - 1) * (n - 2) / 6;
}

EdgeList rmat(unsigned scale, std::uint64_t seed) {
  GraphSpec spec;
  spec.scale = scale;
  spec.seed = seed;
  return rmat_graph(spec);
}

// --- 1. correctness vs oracle -------------------------------------------

bool criterion1() {
  testutil::TempDir spill("acc1");
  EngineConfig config = scratch_config(spill.path());
  bool ok = true;

  for (VertexId n = 3; n <= 8; ++n) {
    PipelineCounts counts =
        run_all_pipelines(make_complete(n), 4, 2, config);
    std::uint64_t expected = choose3(n);
    if (counts.adj != expected || counts.adjinc != expected ||
        counts.hybrid != expected) {
      note("complete graph n=" + std::to_string(n) + " mismatch");
      ok = false;
    }
    if (counts.max_runtime >= 1.0) {
      note("complete graph n=" + std::to_string(n) + " too slow");
      ok = false;
    }
  }

  std::vector<std::pair<std::string, EdgeList>> zero_fixtures = {
      {"path", make_path(32)},
      {"star", make_star(32)},
      {"cycle", make_cycle(12)},
      {"tree", make_binary_tree(31)},
  };
  for (const auto& [name, g] : zero_fixtures) {
    PipelineCounts counts = run_all_pipelines(g, 3, 1, config);
    if (counts.adj != 0 || counts.adjinc != 0 || counts.hybrid != 0) {
      note(name + " fixture produced a phantom triangle");
      ok = false;
    }
  }

  // 200 random graphs across densities, exact cross-equality.
  auto er_start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20170609);
  const double probs[3] = {0.1, 0.3, 0.6};
  for (int trial = 0; trial < 200; ++trial) {
    VertexId n = 4 + static_cast<VertexId>(rng() % 61);  // up to 64
    double p = probs[trial % 3];
    EdgeList g = testutil::erdos_renyi(n, p, rng());
    std::uint64_t brute = brute_force_triangles(g);
    std::uint64_t cohen = cohen_reference(g);
    PipelineCounts counts = run_all_pipelines(g, 4, 2, config);
    Engine engine(config);
    build_upper_adjacency(g, engine, 4, "up");
    std::uint64_t tau0 = count_hybrid(engine, "up", 0).triangles;
    std::uint64_t tau_inf =
        count_hybrid(engine, "up", kNoDegreeThreshold).triangles;
    if (brute != cohen || counts.adj != brute || counts.adjinc != brute ||
        counts.hybrid != brute || tau0 != brute || tau_inf != brute) {
      note("random graph trial " + std::to_string(trial) + " mismatch");
      ok = false;
      break;
    }
  }
  double er_secs = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - er_start)
                       .count();
  if (er_secs >= 30.0) {
    note("random graph batch exceeded 30s");
    ok = false;
  }

  // Power-law graphs, three seeds per scale.
  auto rmat_start = std::chrono::steady_clock::now();
  for (unsigned scale = 10; scale <= 13; ++scale) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      EdgeList g = rmat(scale, seed);
      std::uint64_t expected = brute_force_triangles(g);
      std::uint64_t tau = 2 * g.n_edges() / g.n_vertices;
      PipelineCounts counts = run_all_pipelines(g, 24, tau, config);
      if (counts.adj != expected || counts.adjinc != expected ||
          counts.hybrid != expected) {
        note("scale " + std::to_string(scale) + " seed " +
             std::to_string(seed) + ": pipelines disagree with the oracle");
        ok = false;
      }
    }
  }
  double rmat_secs = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - rmat_start)
                         .count();
  if (rmat_secs >= 300.0) {
    note("power-law batch exceeded 5 minutes");
    ok = false;
  }
  return ok;
}

// --- 2. nppf structure ---------------------------------------------------

bool criterion2() {
  testutil::TempDir spill("acc2");
  EngineConfig config = scratch_config(spill.path());
  bool ok = true;

  std::vector<EdgeList> fixtures;
  for (VertexId n = 3; n <= 8; ++n) fixtures.push_back(make_complete(n));
  fixtures.push_back(make_path(24));
  fixtures.push_back(make_star(24));
  fixtures.push_back(make_cycle(16));
  fixtures.push_back(make_binary_tree(31));
  std::mt19937_64 rng(77);
  for (int i = 0; i < 10; ++i) {
    fixtures.push_back(testutil::erdos_renyi(40, 0.3, rng()));
  }
  for (unsigned scale = 10; scale <= 12; ++scale) {
    fixtures.push_back(rmat(scale, 1));
  }

  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const EdgeList& g = fixtures[i];
    PipelineCounts counts = run_all_pipelines(g, 8, 4, config);
    if (counts.adj_nppf != nppf_oracle_adjacency(g)) {
      note("fixture " + std::to_string(i) + ": adjacency nppf deviates");
      ok = false;
    }
    if (counts.adjinc_nppf != nppf_oracle_adj_incidence(g)) {
      note("fixture " + std::to_string(i) + ": adj+incidence nppf deviates");
      ok = false;
    }
  }
  return ok;
}

// --- 3. parity-trick invariant ------------------------------------------

bool criterion3() {
  std::mt19937_64 rng(333);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    VertexId n = 4 + static_cast<VertexId>(rng() % 40);
    EdgeList g = testutil::erdos_renyi(n, 0.3, rng());
    Engine engine;
    build_upper_adjacency(g, engine, 4, "a");
    PipelineOptions options;
    options.keep_result_table = true;
    options.result_table = "acc";
    count_adjacency_only(engine, "a", options);
    Table& acc = engine.table("acc");
    acc.compact();

    std::set<Key> edges;
    for (const Entry& e : engine.table("a").scan()) edges.insert(e.key);
    for (const Entry& e : acc.scan()) {
      bool odd = decode_value(e.value) % 2 == 1;
      if (odd != (edges.count(e.key) > 0)) ++violations;
    }
  }
  if (violations > 0) {
    note("parity violations: " + std::to_string(violations));
  }
  return violations == 0;
}

// --- 4. pair-collapse invariant -----------------------------------------

bool criterion4() {
  std::vector<EdgeList> fixtures;
  for (VertexId n = 3; n <= 8; ++n) fixtures.push_back(make_complete(n));
  fixtures.push_back(make_path(16));
  fixtures.push_back(make_star(16));
  fixtures.push_back(make_cycle(9));
  fixtures.push_back(make_binary_tree(15));
  std::mt19937_64 rng(44);
  for (int i = 0; i < 20; ++i) {
    fixtures.push_back(testutil::erdos_renyi(32, 0.35, rng()));
  }

  bool ok = true;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const EdgeList& g = fixtures[i];
    EmissionHistogram hist = incidence_emission_histogram(g);
    Engine engine;
    Table& lower = build_lower_adjacency(g, engine, 3, "a");
    Table& incidence = build_incidence(g, engine, 3, "e");

    // Raw sink: observe every empty write per key.
    Table& raw = engine.create_table("raw", incidence.splits(), {});
    outer_table_mult(lower, incidence, row_multiply_adj_incidence, raw);
    std::map<Key, std::uint64_t> writes;
    for (const Entry& e : raw.scan()) ++writes[e.key];
    std::uint64_t over_two = 0;
    std::uint64_t twos = 0;
    for (const auto& [key, count] : writes) {
      if (count > 2) ++over_two;
      if (count == 2) ++twos;
    }

    // Collapse-only sink: count the produced 1-valued entries.
    CombinerStack collapse_only;
    collapse_only.key_spanning = {std::make_shared<PairCollapseCombiner>()};
    Table& collapsed =
        engine.create_table("collapsed", incidence.splits(), collapse_only);
    outer_table_mult(lower, incidence, row_multiply_adj_incidence, collapsed);
    collapsed.compact();
    std::uint64_t ones = 0;
    for (const Entry& e : collapsed.scan()) {
      if (!is_marker(e.value) && decode_value(e.value) == 1) ++ones;
    }

    if (over_two != 0 || twos != hist.keys_with_two ||
        ones != hist.keys_with_two) {
      note("fixture " + std::to_string(i) + ": collapse accounting broke");
      ok = false;
    }
  }
  return ok;
}

// --- 5. engine scan-stability -------------------------------------------

bool criterion5() {
  std::mt19937_64 rng(55);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    EngineConfig config;
    config.buffer_flush_bytes = 1 + rng() % 400;
    config.max_runs_per_tablet = 1 + rng() % 5;
    std::vector<Bytes> boundaries;
    if (rng() % 2) boundaries.push_back(Bytes(1, static_cast<char>('f')));
    if (rng() % 4 == 0) boundaries.push_back(Bytes(1, static_cast<char>('q')));
    Table t("trial", SplitPoints{boundaries}, summing_stack(), config);

    std::map<Key, std::uint64_t> model;
    int ops = 1 + static_cast<int>(rng() % 100);
    for (int op = 0; op < ops; ++op) {
      unsigned action = rng() % 100;
      if (action < 82) {
        Bytes row(1, static_cast<char>('a' + rng() % 24));
        Bytes colq(1, static_cast<char>('a' + rng() % 3));
        std::uint64_t v = rng() % 100;
        t.put(Entry{Key{row, colq}, encode_value(v)});
        model[Key{row, colq}] += v;
      } else if (action < 92) {
        t.flush();
      } else {
        t.compact();
      }
    }
    std::vector<Entry> expected;
    for (const auto& [k, v] : model) {
      expected.push_back(Entry{k, encode_value(v)});
    }
    if (t.scan() != expected) ++violations;
  }
  if (violations > 0) {
    note("scan-stability violations: " + std::to_string(violations));
  }
  return violations == 0;
}

// --- 6. hybrid threshold invariance & skew mitigation --------------------

bool criterion6() {
  testutil::TempDir spill("acc6");
  EngineConfig config = scratch_config(spill.path());
  bool ok = true;
  for (unsigned scale = 10; scale <= 12; ++scale) {
    EdgeList g = rmat(scale, 1);
    Engine engine(config);
    build_upper_adjacency(g, engine, 24, "a");

    std::uint64_t expected = brute_force_triangles(g);
    for (std::uint64_t tau :
         {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{2},
          std::uint64_t{8}, std::uint64_t{32}, kNoDegreeThreshold}) {
      auto result = count_hybrid(engine, "a", tau);
      if (result.triangles != expected) {
        note("scale " + std::to_string(scale) + " tau " + std::to_string(tau) +
             ": count drifted");
        ok = false;
      }
    }

    std::uint64_t mean_degree = 2 * g.n_edges() / g.n_vertices;
    auto at_mean = count_hybrid(engine, "a", mean_degree);
    auto at_inf = count_hybrid(engine, "a", kNoDegreeThreshold);
    double mitigated = imbalance_ratio(at_mean.per_tablet_load);
    double full = imbalance_ratio(at_inf.per_tablet_load);
    if (!(mitigated < full)) {
      std::ostringstream msg;
      msg << "scale " << scale << ": imbalance " << mitigated
          << " not below " << full;
      note(msg.str());
      ok = false;
    }
  }
  return ok;
}

// --- 7. metrics fidelity --------------------------------------------------

bool criterion7() {
  testutil::TempDir dir("acc7");
  bool ok = true;

  BenchOptions options;
  options.scales = {8, 9};
  options.algos = {"adj", "adjinc"};
  options.repetitions = 2;
  options.seed = 3;
  options.out_csv = dir.path() / "bench.csv";
  std::ostringstream log;
  auto rows = run_bench(options, log);

  for (const RunMetrics& m : rows) {
    double expected =
        m.runtime_seconds > 0 ? 2.0 * static_cast<double>(m.nppf) /
                                    m.runtime_seconds
                              : 0.0;
    if (m.rate() != expected) {
      note("in-memory rate deviates from 2*nppf/runtime");
      ok = false;
    }
  }

  std::ifstream csv(*options.out_csv);
  std::string header;
  std::getline(csv, header);
  if (header != std::string(kMetricsCsvHeader)) {
    note("csv header mismatch: " + header);
    ok = false;
  }
  std::string line;
  std::size_t n_rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    ++n_rows;
    // scale,algo,nedges,nppf,time_s,rate,...
    std::vector<std::string> fields;
    std::istringstream split(line);
    std::string field;
    while (std::getline(split, field, ',')) fields.push_back(field);
    if (fields.size() != 9) {
      note("csv row has " + std::to_string(fields.size()) + " fields");
      ok = false;
      continue;
    }
    double nppf = std::stod(fields[3]);
    double time_s = std::stod(fields[4]);
    double rate = std::stod(fields[5]);
    double recomputed = 2.0 * nppf / time_s;
    if (std::abs(rate - recomputed) > 0.002 * recomputed + 0.5) {
      note("csv rate not within print rounding of 2*nppf/time");
      ok = false;
    }
  }
  if (n_rows != rows.size()) {
    note("csv row count mismatch");
    ok = false;
  }
  return ok;
}

// --- 8. determinism --------------------------------------------------------

bool criterion8() {
  testutil::TempDir dir("acc8");
  bool ok = true;

  GenOptions gen;
  gen.spec.scale = 10;
  gen.spec.seed = 99;
  gen.out = dir.path() / "a.tsv";
  std::ostringstream log;
  run_gen(gen, log);
  gen.out = dir.path() / "b.tsv";
  run_gen(gen, log);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  if (slurp(dir.path() / "a.tsv") != slurp(dir.path() / "b.tsv")) {
    note("generated TSV bytes differ across runs");
    ok = false;
  }

  EdgeList g = rmat(10, 7);
  EngineConfig config = scratch_config(dir.path() / "spill");
  std::vector<PipelineCounts> observed;
  for (unsigned workers : {1u, 4u, 1u}) {
    observed.push_back(run_all_pipelines(g, 24, 8, config, workers));
  }
  for (std::size_t i = 1; i < observed.size(); ++i) {
    if (observed[i].adj != observed[0].adj ||
        observed[i].adjinc != observed[0].adjinc ||
        observed[i].hybrid != observed[0].hybrid ||
        observed[i].adj_nppf != observed[0].adj_nppf ||
        observed[i].adjinc_nppf != observed[0].adjinc_nppf) {
      note("pipeline results vary across worker counts");
      ok = false;
    }
  }
  return ok;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  double total = 0;
  total += run_criterion("1. correctness vs oracle", criterion1);
  total += run_criterion("2. nppf structure", criterion2);
  total += run_criterion("3. parity-trick invariant", criterion3);
  total += run_criterion("4. pair-collapse invariant", criterion4);
  total += run_criterion("5. engine scan-stability", criterion5);
  total += run_criterion("6. hybrid threshold invariance", criterion6);
  total += run_criterion("7. metrics fidelity", criterion7);
  total += run_criterion("8. determinism", criterion8);
  std::printf("%d failure(s), %.1fs total\n", g_failures, total);
  return g_failures == 0 ? 0 : 1;
}
