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

#include "tritable/tablemult.hpp"

#include <algorithm>
#include <atomic>
#include <list>
#include <memory>
#include <unordered_map>

namespace tritable {

namespace {

std::size_t row_group_end(const std::vector<Entry>& entries,
                          std::size_t begin) {
  std::size_t end = begin;
  while (end < entries.size() &&
         entries[end].key.row == entries[begin].key.row) {
    ++end;
  }
  return end;
}

}  // namespace

MultiplyStats outer_table_mult(const Table& left, const Table& right,
                               const RowMultiplyFn& fn, Table& sink,
                               const MultiplyOptions& options) {
  const std::size_t n_tablets = left.tablet_count();
  MultiplyStats stats;
  stats.per_tablet_emitted.assign(n_tablets, 0);
  std::atomic<std::uint64_t> npp_total{0};
  std::atomic<std::uint64_t> nppf{0};
  const bool self_multiply = &left == &right;

  parallel_for(n_tablets, options.workers, [&](std::size_t tablet) {
    std::vector<Entry> left_entries = left.scan_tablet(tablet);
    if (left_entries.empty()) return;
    std::vector<Entry> right_storage;
    if (!self_multiply) {
      right_storage = right.scan(left.tablet_row_range(tablet));
    }
    const std::vector<Entry>& right_entries =
        self_multiply ? left_entries : right_storage;

    RowMultiplyOutput out;
    std::uint64_t tablet_emitted = 0;
    std::size_t li = 0, ri = 0;
    while (li < left_entries.size() && ri < right_entries.size()) {
      const Bytes& lrow = left_entries[li].key.row;
      const Bytes& rrow = right_entries[ri].key.row;
      if (lrow < rrow) {
        li = row_group_end(left_entries, li);
      } else if (rrow < lrow) {
        ri = row_group_end(right_entries, ri);
      } else {
        std::size_t lend = row_group_end(left_entries, li);
        std::size_t rend = row_group_end(right_entries, ri);
        if (!options.row_filter || options.row_filter(lrow, lend - li)) {
          out.products.clear();
          out.pairs_formed = 0;
          fn(lrow, std::span(left_entries.data() + li, lend - li),
             std::span(right_entries.data() + ri, rend - ri), out);
          npp_total.fetch_add(out.pairs_formed, std::memory_order_relaxed);
          nppf.fetch_add(out.products.size(), std::memory_order_relaxed);
          tablet_emitted += out.products.size();
          for (const Entry& product : out.products) sink.put(product);
        }
        li = lend;
        ri = rend;
      }
    }
    stats.per_tablet_emitted[tablet] = tablet_emitted;
  });

  stats.npp_total = npp_total.load();
  stats.nppf = nppf.load();
  return stats;
}

void row_multiply_adjacency(const Bytes&, std::span<const Entry> left_row,
                            std::span<const Entry> right_row,
                            RowMultiplyOutput& out) {
  out.pairs_formed +=
      static_cast<std::uint64_t>(left_row.size()) * right_row.size();
  const Bytes doubled = encode_value(2);
  for (const Entry& a : left_row) {
    for (const Entry& b : right_row) {
      if (a.key.colq < b.key.colq) {
        out.products.push_back(Entry{Key{a.key.colq, b.key.colq}, doubled});
      }
    }
  }
}

void row_multiply_adj_incidence(const Bytes&, std::span<const Entry> left_row,
                                std::span<const Entry> right_row,
                                RowMultiplyOutput& out) {
  out.pairs_formed +=
      static_cast<std::uint64_t>(left_row.size()) * right_row.size();
  for (const Entry& a : left_row) {
    const Bytes& v1 = a.key.colq;  // 4-byte neighbor below the row vertex
    for (const Entry& b : right_row) {
      // Label is [v2,v3]; keep the product iff v1 < v2.
      if (b.key.colq.compare(0, 4, v1) > 0) {
        out.products.push_back(Entry{Key{v1, b.key.colq}, Bytes()});
      }
    }
  }
}

namespace {

// Small LRU over fetched row column sets; the high-degree row subset the
// inner product re-reads is small, so hit rates stay high.
class RowSetCache {
 public:
  explicit RowSetCache(std::size_t capacity) : capacity_(capacity) {}

  std::shared_ptr<const std::vector<Bytes>> get(const Table& table,
                                                const Bytes& row) {
    auto it = index_.find(row);
    if (it != index_.end()) {
      order_.splice(order_.begin(), order_, it->second);
      return it->second->second;
    }
    auto columns = std::make_shared<std::vector<Bytes>>();
    for (const Entry& e : table.scan(RowRange{row, row_successor(row)})) {
      columns->push_back(e.key.colq);
    }
    order_.emplace_front(row, columns);
    index_[row] = order_.begin();
    if (capacity_ > 0 && index_.size() > capacity_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
    return columns;
  }

 private:
  using Slot = std::pair<Bytes, std::shared_ptr<const std::vector<Bytes>>>;
  std::size_t capacity_;
  std::list<Slot> order_;
  std::unordered_map<Bytes, std::list<Slot>::iterator> index_;
};

std::uint64_t sorted_intersection(const std::vector<Bytes>& a,
                                  const std::vector<Bytes>& b) {
  std::uint64_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

}  // namespace

InnerProductResult inner_product_masked_count(
    const Table& upper_adjacency, const std::unordered_set<Bytes>& rows,
    const InnerProductOptions& options) {
  InnerProductResult result;
  if (rows.empty()) return result;
  RowSetCache cache(options.row_cache_capacity);

  for (std::size_t tablet = 0; tablet < upper_adjacency.tablet_count();
       ++tablet) {
    std::vector<Entry> entries = upper_adjacency.scan_tablet(tablet);
    std::size_t i = 0;
    while (i < entries.size()) {
      std::size_t end = row_group_end(entries, i);
      const Bytes& row = entries[i].key.row;
      if (rows.count(row)) {
        std::vector<Bytes> row_columns;
        row_columns.reserve(end - i);
        for (std::size_t k = i; k < end; ++k) {
          row_columns.push_back(entries[k].key.colq);
        }
        // Each mask entry (row, c) contributes |forward(row) n forward(c)|,
        // summed immediately without materializing anything.
        for (const Bytes& c : row_columns) {
          auto c_columns = cache.get(upper_adjacency, c);
          std::uint64_t hits = sorted_intersection(row_columns, *c_columns);
          result.triangles += hits;
          result.nppf += hits;
        }
      }
      i = end;
    }
  }
  return result;
}

}  // namespace tritable
