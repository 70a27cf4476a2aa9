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

#include "tritable/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <stdexcept>

#include "tritable/tricount.hpp"

namespace tritable {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// Temp spill directory removed on scope exit (only when we created it).
class SpillDirGuard {
 public:
  explicit SpillDirGuard(const std::optional<std::filesystem::path>& given) {
    if (given) {
      path_ = *given;
      std::filesystem::create_directories(path_);
    } else {
      auto base = std::filesystem::temp_directory_path() / "tritable-spill";
      std::filesystem::create_directories(base);
      path_ = base / std::to_string(
                         std::chrono::steady_clock::now().time_since_epoch() /
                         std::chrono::nanoseconds(1));
      std::filesystem::create_directories(path_);
      owned_ = true;
    }
  }

  ~SpillDirGuard() {
    if (owned_) {
      std::error_code ec;
      std::filesystem::remove_all(path_, ec);
    }
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  bool owned_ = false;
};

void append_csv(const std::filesystem::path& path, const RunMetrics& m) {
  bool write_header = !std::filesystem::exists(path) ||
                      std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (write_header) out << kMetricsCsvHeader << '\n';
  out << to_csv_row(m) << '\n';
}

}  // namespace

std::uint64_t run_gen(const GenOptions& options, std::ostream& log) {
  EdgeList g = rmat_graph(options.spec);
  save_tsv(g, options.out);
  log << "nedges " << g.n_edges() << "\n";
  return g.n_edges();
}

std::uint64_t parse_threshold(const std::string& text, const EdgeList& g) {
  if (text == "inf") return kNoDegreeThreshold;
  if (text == "mean") {
    if (g.n_vertices == 0) return 0;
    return 2 * g.n_edges() / g.n_vertices;
  }
  std::size_t pos = 0;
  std::uint64_t value = std::stoull(text, &pos);
  if (pos != text.size()) {
    throw std::invalid_argument("bad threshold: " + text);
  }
  return value;
}

std::vector<unsigned> parse_scales(const std::string& text) {
  std::vector<unsigned> scales;
  if (text.empty()) return scales;
  auto dash = text.find('-');
  if (dash != std::string::npos) {
    unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, dash)));
    unsigned hi = static_cast<unsigned>(std::stoul(text.substr(dash + 1)));
    if (hi < lo) throw std::invalid_argument("bad scale range: " + text);
    for (unsigned s = lo; s <= hi; ++s) scales.push_back(s);
    return scales;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string token = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!token.empty()) {
      scales.push_back(static_cast<unsigned>(std::stoul(token)));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return scales;
}

RunMetrics measure_algorithm(const EdgeList& g, const std::string& algo,
                             const CountOptions& options,
                             const std::string& scale_label) {
  RunMetrics metrics;
  metrics.scale = scale_label;
  metrics.algo = algo;
  metrics.nedges = g.n_edges();
  double best = -1.0;

  if (algo == "oracle") {
    for (int rep = 0; rep < std::max(1, options.repetitions); ++rep) {
      auto start = std::chrono::steady_clock::now();
      std::uint64_t t = brute_force_triangles(g);
      double elapsed = seconds_since(start);
      if (best < 0 || elapsed < best) best = elapsed;
      metrics.triangles = t;
    }
    metrics.nppf = nppf_oracle_adjacency(g);
    metrics.runtime_seconds = best;
    return metrics;
  }

  const VertexCodec& codec = codec_by_name(options.encoding);
  if (algo == "adjinc" && !codec.fixed_width()) {
    throw std::invalid_argument(
        "algo adjinc requires the fixed encoding (edge labels must "
        "un-concatenate)");
  }

  SpillDirGuard spill(options.spill_dir);
  EngineConfig config;
  config.spill_dir = spill.path();
  config.workers = options.workers;
  Engine engine(config);

  PipelineOptions pipeline;
  pipeline.workers = options.workers;

  auto record = [&](const TriangleResult& r, int rep) {
    if (rep > 0 && metrics.triangles != r.triangles) {
      throw std::logic_error("triangle count varied across repetitions");
    }
    metrics.triangles = r.triangles;
    metrics.nppf = r.nppf;
    double elapsed = r.runtime_seconds();
    if (best < 0 || elapsed < best) {
      best = elapsed;
      metrics.matmul_seconds = r.matmul_seconds;
      metrics.reduce_seconds = r.reduce_seconds;
    }
  };

  int reps = std::max(1, options.repetitions);
  if (algo == "adj") {
    build_upper_adjacency(g, engine, options.tablets, "adjacency", codec);
    for (int rep = 0; rep < reps; ++rep) {
      record(count_adjacency_only(engine, "adjacency", pipeline), rep);
    }
  } else if (algo == "adjinc") {
    build_lower_adjacency(g, engine, options.tablets, "adjacency", codec);
    build_incidence(g, engine, options.tablets, "incidence");
    for (int rep = 0; rep < reps; ++rep) {
      record(count_adj_incidence(engine, "adjacency", "incidence", pipeline),
             rep);
    }
  } else if (algo == "hybrid") {
    std::uint64_t threshold = parse_threshold(options.threshold, g);
    build_upper_adjacency(g, engine, options.tablets, "adjacency", codec);
    for (int rep = 0; rep < reps; ++rep) {
      record(count_hybrid(engine, "adjacency", threshold, pipeline), rep);
    }
  } else {
    throw std::invalid_argument("unknown algo: " + algo);
  }

  metrics.runtime_seconds = best;
  return metrics;
}

RunMetrics run_count(const CountOptions& options, std::ostream& log) {
  EdgeList g = load_tsv(options.input);
  std::string label = options.label.empty()
                          ? options.input.stem().string()
                          : options.label;
  RunMetrics metrics = measure_algorithm(g, options.algo, options, label);
  print_metrics(log, metrics);
  if (options.out_csv) append_csv(*options.out_csv, metrics);
  return metrics;
}

std::vector<RunMetrics> run_bench(const BenchOptions& options,
                                  std::ostream& log) {
  std::vector<RunMetrics> rows;
  for (unsigned scale : options.scales) {
    GraphSpec spec;
    spec.scale = scale;
    spec.edge_factor = options.edge_factor;
    spec.seed = options.seed;
    EdgeList g = rmat_graph(spec);
    for (const std::string& algo : options.algos) {
      CountOptions per_run;
      per_run.algo = algo;
      per_run.tablets = options.tablets;
      per_run.threshold = options.threshold;
      per_run.repetitions = options.repetitions;
      per_run.workers = options.workers;
      per_run.spill_dir = options.spill_dir;
      rows.push_back(
          measure_algorithm(g, algo, per_run, std::to_string(scale)));
      log << "done scale " << scale << " algo " << algo << " triangles "
          << rows.back().triangles << "\n";
    }
  }
  print_metrics_table(log, rows);
  if (options.out_csv) {
    std::ofstream out(*options.out_csv, std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + options.out_csv->string());
    }
    out << kMetricsCsvHeader << '\n';
    for (const RunMetrics& m : rows) out << to_csv_row(m) << '\n';
  }
  return rows;
}

SkewReport run_stats(const StatsOptions& options, std::ostream& log) {
  EdgeList g = load_tsv(options.input);

  // Mirror the engine's split choice on the upper adjacency entries.
  Engine engine;
  Table& adjacency =
      build_upper_adjacency(g, engine, options.tablets, "adjacency");
  std::vector<VertexId> first_rows;
  first_rows.reserve(adjacency.splits().boundaries.size());
  for (const Bytes& b : adjacency.splits().boundaries) {
    first_rows.push_back(decode_vertex(b));
  }
  SkewReport report = skew_report(g, first_rows);

  log << "vertices " << g.n_vertices << "\n";
  log << "edges " << g.n_edges() << "\n";
  log << "max_degree " << report.max_degree << "\n";
  log << "mean_degree " << report.mean_degree << "\n";
  log << "degree histogram (degree count):\n";
  for (auto [degree, count] : report.degree_histogram) {
    log << "  " << degree << " " << count << "\n";
  }
  log << "per-tablet wedge load:";
  for (std::uint64_t load : report.per_tablet_load) log << " " << load;
  log << "\nimbalance_ratio " << report.imbalance_ratio << "\n";

  if (options.out_csv) {
    std::ofstream out(*options.out_csv, std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + options.out_csv->string());
    }
    out << "tablet,wedge_load\n";
    for (std::size_t i = 0; i < report.per_tablet_load.size(); ++i) {
      out << i << ',' << report.per_tablet_load[i] << '\n';
    }
  }
  return report;
}

}  // namespace tritable
