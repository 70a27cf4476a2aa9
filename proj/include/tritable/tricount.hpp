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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tritable/engine.hpp"
#include "tritable/tablemult.hpp"

namespace tritable {

struct TriangleResult {
  std::uint64_t triangles = 0;
  std::uint64_t nppf = 0;
  std::uint64_t npp_total = 0;
  double matmul_seconds = 0.0;
  double reduce_seconds = 0.0;
  std::vector<std::uint64_t> per_tablet_load;  // outer-product emissions

  double runtime_seconds() const { return matmul_seconds + reduce_seconds; }
};

struct PipelineOptions {
  unsigned workers = 0;
  // Keep the intermediate accumulation table under `result_table` instead
  // of dropping it (tests inspect parity and collapse behavior there).
  bool keep_result_table = false;
  std::string result_table;
};

// Stream rewrite: two consecutive same-key empty-valued entries become one
// entry with value 1; lone empties pass through; numerics are never
// touched. Same-key empties meeting across runs collapse at compaction or
// scan, whichever sees them adjacent first.
class PairCollapseCombiner final : public StreamCombiner {
 public:
  void apply(std::vector<Entry>& stream) const override;
};

// Stream rewrite: folds every numeric (non-empty) value in the stream into
// the first numeric entry's position and key, conserving the sum; empties
// pass through. Tolerates pre-summed numerics anywhere in key order.
class NumericSumCombiner final : public StreamCombiner {
 public:
  void apply(std::vector<Entry>& stream) const override;
};

// Terminal scan-side fold: keep odd values, contribute (v-1)/2, sum. Even
// values are pure wedge counts and contribute nothing.
struct OddFilterReducer {
  static std::uint64_t reduce(std::span<const Entry> entries);
};

enum class TriangleOrientation { kUpper, kLower };

// Strict triangularity and unit values; throws ValidationError.
void validate_adjacency(const Table& table, TriangleOrientation orientation);
// Every 8-byte edge-label column has exactly the two endpoint rows, labels
// ascend, values are 1; throws ValidationError.
void validate_incidence(const Table& table);

// Clone the upper adjacency, add doubled upper-filtered partial products of
// the self-multiply, then odd-filter-reduce the accumulation table.
TriangleResult count_adjacency_only(Engine& engine,
                                    const std::string& upper_adjacency,
                                    const PipelineOptions& options = {});

// Multiply lower adjacency against the incidence table into a marker table
// carrying the pair-collapse and numeric-sum iterators; the final scan sums
// surviving numerics per tablet.
TriangleResult count_adj_incidence(Engine& engine,
                                   const std::string& lower_adjacency,
                                   const std::string& incidence,
                                   const PipelineOptions& options = {});

constexpr std::uint64_t kNoDegreeThreshold =
    std::numeric_limits<std::uint64_t>::max();

// Skew-aware split: rows with entry count > threshold take the masked
// inner-product path (immediate summation); the rest run the outer-product
// pipeline. The total is threshold-invariant.
TriangleResult count_hybrid(Engine& engine, const std::string& upper_adjacency,
                            std::uint64_t degree_threshold,
                            const PipelineOptions& options = {});

}  // namespace tritable
