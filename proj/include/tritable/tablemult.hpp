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
#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include "tritable/engine.hpp"

namespace tritable {

struct MultiplyStats {
  std::uint64_t npp_total = 0;  // partial products before filtering
  std::uint64_t nppf = 0;       // partial products emitted after filtering
  // Emissions attributed to the generating (left-table) tablet; the
  // outer-product work profile used for skew accounting.
  std::vector<std::uint64_t> per_tablet_emitted;
};

// Products of one aligned row. `pairs_formed` counts multiplicand pairs
// before the row function's filter; `products.size()` is the post-filter
// emission count.
struct RowMultiplyOutput {
  std::vector<Entry> products;
  std::uint64_t pairs_formed = 0;
};

// Row-multiply functions see only one row's entries from each operand, so
// distinct rows may run in parallel.
using RowMultiplyFn =
    std::function<void(const Bytes& row, std::span<const Entry> left_row,
                       std::span<const Entry> right_row, RowMultiplyOutput&)>;

struct MultiplyOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  // When set, rows where this returns false are skipped entirely (the
  // hybrid pipeline routes high-degree rows elsewhere).
  std::function<bool(const Bytes& row, std::size_t left_row_entries)>
      row_filter;
};

// Fused multiply: merge-join the two tables' scans on row, apply fn to each
// row present in both, and put every emitted entry into sink (whose
// combiner stack handles summation). Left and right may be the same table.
MultiplyStats outer_table_mult(const Table& left, const Table& right,
                               const RowMultiplyFn& fn, Table& sink,
                               const MultiplyOptions& options = {});

// Upper-triangle self-multiply: for each column pair c < c' of the row,
// emit (c, c', 2). The doubled value is the multiply's own output, not a
// post-scale.
void row_multiply_adjacency(const Bytes& row, std::span<const Entry> left_row,
                            std::span<const Entry> right_row,
                            RowMultiplyOutput& out);

// Lower-adjacency x incidence: left entries are (v, v1) with v1 below v,
// right entries are (v, [v2,v3]); emit (v1, [v2,v3], empty) iff v1 < v2 by
// raw byte comparison (valid because the codec preserves order).
void row_multiply_adj_incidence(const Bytes& row,
                                std::span<const Entry> left_row,
                                std::span<const Entry> right_row,
                                RowMultiplyOutput& out);

struct InnerProductOptions {
  std::size_t row_cache_capacity = 1024;  // LRU over fetched row column sets
};

struct InnerProductResult {
  std::uint64_t triangles = 0;
  std::uint64_t nppf = 0;  // post-mask products formed (intersection hits)
};

// Masked inner product restricted to a row subset: for each entry (r, c) of
// the upper adjacency with r in `rows`, intersect the forward column sets
// of r and c and sum immediately — nothing is materialized. Over all rows
// this equals the full adjacency-only count.
InnerProductResult inner_product_masked_count(
    const Table& upper_adjacency, const std::unordered_set<Bytes>& rows,
    const InnerProductOptions& options = {});

}  // namespace tritable
