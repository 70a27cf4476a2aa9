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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tritable/generator.hpp"
#include "tritable/metrics.hpp"
#include "tritable/oracle.hpp"

namespace tritable {

// Library-level command implementations behind the CLI, testable without a
// process boundary.

struct GenOptions {
  GraphSpec spec;
  std::filesystem::path out;
};

// Writes the symmetrized simple edge list; returns nedges.
std::uint64_t run_gen(const GenOptions& options, std::ostream& log);

struct CountOptions {
  std::filesystem::path input;
  std::string algo = "adj";  // adj | adjinc | hybrid | oracle
  std::size_t tablets = 24;
  std::string threshold = "mean";  // integer, "mean", or "inf" (hybrid only)
  int repetitions = 3;
  unsigned workers = 0;
  std::string encoding = "fixed";  // fixed | decimal-string
  std::optional<std::filesystem::path> out_csv;  // append a CSV row
  std::optional<std::filesystem::path> spill_dir;
  std::string label;  // scale column override; defaults to the input stem
};

RunMetrics run_count(const CountOptions& options, std::ostream& log);

struct BenchOptions {
  std::vector<unsigned> scales;
  std::vector<std::string> algos = {"adj", "adjinc"};
  unsigned edge_factor = 16;
  std::uint64_t seed = 1;
  std::size_t tablets = 24;
  std::string threshold = "mean";
  int repetitions = 3;
  unsigned workers = 0;
  std::optional<std::filesystem::path> out_csv;
  std::optional<std::filesystem::path> spill_dir;
};

std::vector<RunMetrics> run_bench(const BenchOptions& options,
                                  std::ostream& log);

struct StatsOptions {
  std::filesystem::path input;
  std::size_t tablets = 24;
  std::optional<std::filesystem::path> out_csv;
};

SkewReport run_stats(const StatsOptions& options, std::ostream& log);

// Parse a hybrid threshold: unsigned integer, "mean" (2*nedges/n_vertices),
// or "inf".
std::uint64_t parse_threshold(const std::string& text, const EdgeList& g);

// Parse "10-13" or "10,11,12".
std::vector<unsigned> parse_scales(const std::string& text);

// Inner workhorse shared by count and bench: builds the tables once and
// runs the pipeline `repetitions` times, keeping the best runtime.
RunMetrics measure_algorithm(const EdgeList& g, const std::string& algo,
                             const CountOptions& options,
                             const std::string& scale_label);

}  // namespace tritable
