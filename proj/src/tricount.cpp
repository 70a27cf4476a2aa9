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

#include "tritable/tricount.hpp"

#include <atomic>
#include <chrono>
#include <unordered_map>
#include <unordered_set>

namespace tritable {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// Per-tablet scan fold with client-side final sum.
std::uint64_t reduce_per_tablet(
    const Table& table, unsigned workers,
    const std::function<std::uint64_t(std::span<const Entry>)>& fold) {
  std::atomic<std::uint64_t> total{0};
  parallel_for(table.tablet_count(), workers, [&](std::size_t i) {
    std::vector<Entry> entries = table.scan_tablet(i);
    total.fetch_add(fold(entries), std::memory_order_relaxed);
  });
  return total.load();
}

std::uint64_t sum_numeric_values(std::span<const Entry> entries) {
  std::uint64_t sum = 0;
  for (const Entry& e : entries) {
    if (!is_marker(e.value)) sum += decode_value(e.value);
  }
  return sum;
}

}  // namespace

void PairCollapseCombiner::apply(std::vector<Entry>& stream) const {
  std::vector<Entry> out;
  out.reserve(stream.size());
  std::size_t i = 0;
  while (i < stream.size()) {
    if (i + 1 < stream.size() && is_marker(stream[i].value) &&
        is_marker(stream[i + 1].value) &&
        stream[i].key == stream[i + 1].key) {
      out.push_back(Entry{stream[i].key, encode_value(1)});
      i += 2;
    } else {
      out.push_back(std::move(stream[i]));
      ++i;
    }
  }
  stream = std::move(out);
}

void NumericSumCombiner::apply(std::vector<Entry>& stream) const {
  std::size_t first_numeric = stream.size();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (!is_marker(stream[i].value)) {
      sum += decode_value(stream[i].value);
      if (first_numeric == stream.size()) first_numeric = i;
    }
  }
  if (first_numeric == stream.size()) return;
  std::vector<Entry> out;
  out.reserve(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (is_marker(stream[i].value)) {
      out.push_back(std::move(stream[i]));
    } else if (i == first_numeric) {
      out.push_back(Entry{stream[i].key, encode_value(sum)});
    }
  }
  stream = std::move(out);
}

std::uint64_t OddFilterReducer::reduce(std::span<const Entry> entries) {
  std::uint64_t sum = 0;
  for (const Entry& e : entries) {
    std::uint64_t v = decode_value(e.value);
    if (v % 2 == 1) sum += (v - 1) / 2;
  }
  return sum;
}

void validate_adjacency(const Table& table,
                        TriangleOrientation orientation) {
  const Bytes one = encode_value(1);
  for (std::size_t i = 0; i < table.tablet_count(); ++i) {
    for (const Entry& e : table.scan_tablet(i)) {
      if (e.key.row == e.key.colq) {
        throw ValidationError("adjacency table " + table.name() +
                              " has a diagonal entry");
      }
      bool upper = e.key.row < e.key.colq;
      if (upper != (orientation == TriangleOrientation::kUpper)) {
        throw ValidationError("adjacency table " + table.name() +
                              " violates strict triangularity");
      }
      if (e.value != one) {
        throw ValidationError("adjacency table " + table.name() +
                              " has a non-unit value");
      }
    }
  }
}

void validate_incidence(const Table& table) {
  const Bytes one = encode_value(1);
  std::unordered_map<Bytes, std::vector<Bytes>> columns;
  for (std::size_t i = 0; i < table.tablet_count(); ++i) {
    for (const Entry& e : table.scan_tablet(i)) {
      if (e.key.colq.size() != 8) {
        throw ValidationError("incidence table " + table.name() +
                              " has a non-8-byte edge label");
      }
      if (e.value != one) {
        throw ValidationError("incidence table " + table.name() +
                              " has a non-unit value");
      }
      columns[e.key.colq].push_back(e.key.row);
    }
  }
  for (const auto& [label, rows] : columns) {
    if (rows.size() != 2) {
      throw ValidationError("incidence column in " + table.name() + " has " +
                            std::to_string(rows.size()) +
                            " entries, expected 2");
    }
    Bytes lo = label.substr(0, 4);
    Bytes hi = label.substr(4, 4);
    if (!(lo < hi)) {
      throw ValidationError("incidence label in " + table.name() +
                            " is not ascending");
    }
    if (!((rows[0] == lo && rows[1] == hi) ||
          (rows[0] == hi && rows[1] == lo))) {
      throw ValidationError("incidence column rows in " + table.name() +
                            " do not match the label endpoints");
    }
  }
}

TriangleResult count_adjacency_only(Engine& engine,
                                    const std::string& upper_adjacency,
                                    const PipelineOptions& options) {
  Table& adjacency = engine.table(upper_adjacency);
  validate_adjacency(adjacency, TriangleOrientation::kUpper);

  std::string accumulation_name =
      options.result_table.empty()
          ? engine.unique_name(upper_adjacency + ".wedges")
          : options.result_table;
  Table& accumulation = engine.clone_table(upper_adjacency, accumulation_name);

  TriangleResult result;
  MultiplyOptions multiply_options;
  multiply_options.workers = options.workers;
  auto start = std::chrono::steady_clock::now();
  MultiplyStats stats =
      outer_table_mult(adjacency, adjacency, row_multiply_adjacency,
                       accumulation, multiply_options);
  result.matmul_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  result.triangles = reduce_per_tablet(accumulation, options.workers,
                                       OddFilterReducer::reduce);
  result.reduce_seconds = seconds_since(start);

  result.nppf = stats.nppf;
  result.npp_total = stats.npp_total;
  result.per_tablet_load = std::move(stats.per_tablet_emitted);
  if (!options.keep_result_table) engine.drop_table(accumulation_name);
  return result;
}

TriangleResult count_adj_incidence(Engine& engine,
                                   const std::string& lower_adjacency,
                                   const std::string& incidence,
                                   const PipelineOptions& options) {
  Table& adjacency = engine.table(lower_adjacency);
  Table& edges = engine.table(incidence);
  validate_adjacency(adjacency, TriangleOrientation::kLower);
  validate_incidence(edges);

  std::string marker_name =
      options.result_table.empty()
          ? engine.unique_name(incidence + ".markers")
          : options.result_table;
  CombinerStack marker_stack;
  marker_stack.key_spanning = {std::make_shared<PairCollapseCombiner>(),
                               std::make_shared<NumericSumCombiner>()};
  // The marker table inherits the incidence table's splits.
  Table& markers =
      engine.create_table(marker_name, edges.splits(), marker_stack);

  TriangleResult result;
  MultiplyOptions multiply_options;
  multiply_options.workers = options.workers;
  auto start = std::chrono::steady_clock::now();
  MultiplyStats stats = outer_table_mult(
      adjacency, edges, row_multiply_adj_incidence, markers, multiply_options);
  result.matmul_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  result.triangles =
      reduce_per_tablet(markers, options.workers, sum_numeric_values);
  result.reduce_seconds = seconds_since(start);

  result.nppf = stats.nppf;
  result.npp_total = stats.npp_total;
  result.per_tablet_load = std::move(stats.per_tablet_emitted);
  if (!options.keep_result_table) engine.drop_table(marker_name);
  return result;
}

TriangleResult count_hybrid(Engine& engine, const std::string& upper_adjacency,
                            std::uint64_t degree_threshold,
                            const PipelineOptions& options) {
  Table& adjacency = engine.table(upper_adjacency);
  validate_adjacency(adjacency, TriangleOrientation::kUpper);

  TriangleResult result;
  auto start = std::chrono::steady_clock::now();

  // Exact row entry counts from a pre-scan; threshold is strict >.
  std::unordered_set<Bytes> heavy_rows;
  for (const auto& [row, count] : row_counts(adjacency)) {
    if (count > degree_threshold) heavy_rows.insert(row);
  }
  InnerProductOptions inner_options;
  inner_options.row_cache_capacity = 1u << 16;
  InnerProductResult inner =
      inner_product_masked_count(adjacency, heavy_rows, inner_options);

  std::string accumulation_name =
      options.result_table.empty()
          ? engine.unique_name(upper_adjacency + ".wedges")
          : options.result_table;
  Table& accumulation = engine.clone_table(upper_adjacency, accumulation_name);
  MultiplyOptions multiply_options;
  multiply_options.workers = options.workers;
  multiply_options.row_filter = [degree_threshold](const Bytes&,
                                                   std::size_t entries) {
    return entries <= degree_threshold;
  };
  MultiplyStats stats =
      outer_table_mult(adjacency, adjacency, row_multiply_adjacency,
                       accumulation, multiply_options);
  result.matmul_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  std::uint64_t outer_triangles = reduce_per_tablet(
      accumulation, options.workers, OddFilterReducer::reduce);
  result.reduce_seconds = seconds_since(start);

  result.triangles = inner.triangles + outer_triangles;
  result.nppf = stats.nppf + inner.nppf;
  result.npp_total = stats.npp_total + inner.nppf;
  result.per_tablet_load = std::move(stats.per_tablet_emitted);
  if (!options.keep_result_table) engine.drop_table(accumulation_name);
  return result;
}

}  // namespace tritable
