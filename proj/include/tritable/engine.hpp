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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "tritable/bytes.hpp"

namespace tritable {

// A miniature tablet-server storage model: tables are partitioned into
// row-aligned tablets; each tablet holds an in-memory buffer plus a list of
// sorted immutable runs (in memory or spilled to disk). Combining iterators
// run at well-defined points:
//
//   * the key-local combiner merges values of one key; it fires on buffer
//     insert, and again wherever same-key entries meet (flush output is
//     already merged, compaction and scan merge across runs);
//   * key-spanning stream combiners rewrite a tablet's merged entry stream;
//     they fire on compaction and scan only, never on insert or flush,
//     because they depend on adjacency of entries in the stream.
//
// Scans therefore always observe the fully combined view regardless of how
// writes were interleaved with flushes and compactions.

struct Key {
  Bytes row;
  Bytes colq;  // column qualifier

  friend auto operator<=>(const Key&, const Key&) = default;
};

struct Entry {
  Key key;
  Bytes value;  // empty value is meaningful (marker), distinct from absent

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Half-open row interval [begin, end); an unset bound is unbounded.
struct RowRange {
  std::optional<Bytes> begin;
  std::optional<Bytes> end;
};

// Reduces the ordered value sequence of a single key. Must be associative
// over the value multiset of a key: any grouping of the fold yields the
// same result.
class KeyLocalCombiner {
 public:
  virtual ~KeyLocalCombiner() = default;
  virtual Bytes combine(const Bytes& accumulated, const Bytes& next) const = 0;
};

// u64 addition over the 8-byte value codec.
class SummingCombiner final : public KeyLocalCombiner {
 public:
  Bytes combine(const Bytes& accumulated, const Bytes& next) const override;
};

// Rewrites one tablet's merged, key-ordered entry stream in place. The
// rewrite must preserve key order. Applied on compaction and scan.
class StreamCombiner {
 public:
  virtual ~StreamCombiner() = default;
  virtual void apply(std::vector<Entry>& stream) const = 0;
};

struct CombinerStack {
  std::shared_ptr<const KeyLocalCombiner> key_local;  // null: keep duplicates
  std::vector<std::shared_ptr<const StreamCombiner>> key_spanning;
};

inline CombinerStack summing_stack() {
  return CombinerStack{std::make_shared<SummingCombiner>(), {}};
}

// Strictly increasing row boundaries; boundary i is the first row of
// tablet i+1, so n boundaries partition the row space into n+1 tablets.
struct SplitPoints {
  std::vector<Bytes> boundaries;
};

// Choose boundaries at row granularity so every tablet's entry count lands
// within one row's worth of the ideal total/n_tablets. `entries` must be
// key-sorted. Returns at most n_tablets-1 boundaries.
SplitPoints compute_equal_splits(std::span<const Entry> entries,
                                 std::size_t n_tablets);

struct EngineConfig {
  std::size_t buffer_flush_bytes = 1u << 20;  // per-tablet auto-flush trigger
  std::size_t max_runs_per_tablet = 8;        // auto-compact trigger
  std::optional<std::filesystem::path> spill_dir;  // unset: runs stay in memory
  std::size_t spill_min_bytes = 4u << 20;  // smaller runs stay in memory
  unsigned workers = 0;                    // 0: hardware concurrency
};

// A sorted immutable entry sequence, either in memory or a temp file.
class SortedRun;

class EntryCursor {
 public:
  virtual ~EntryCursor() = default;
  virtual bool valid() const = 0;
  virtual const Entry& entry() const = 0;
  virtual void advance() = 0;
  // Position at the first entry with key.row >= row.
  virtual void seek_row(const Bytes& row) = 0;
};

class SortedRun {
 public:
  virtual ~SortedRun() = default;
  virtual std::size_t size() const = 0;
  virtual std::unique_ptr<EntryCursor> open() const = 0;
};

class Tablet {
 public:
  explicit Tablet(const EngineConfig* config) : config_(config) {}

  void put(const Key& key, const Bytes& value, const CombinerStack& stack);
  void flush(const CombinerStack& stack);
  void compact(const CombinerStack& stack);

  // Merged view with key-local folding and (optionally) the key-spanning
  // combiners applied. Counts as one scan for instrumentation.
  std::vector<Entry> read(const CombinerStack& stack,
                          const RowRange* range = nullptr) const;

  std::size_t entry_count() const;
  std::uint64_t write_count() const;
  std::uint64_t scan_count() const;
  std::size_t run_count() const;
  // Run object identities, for structural-sharing checks.
  std::vector<const SortedRun*> run_ids() const;

 private:
  friend class Table;

  void flush_locked(const CombinerStack& stack);
  void compact_locked(const CombinerStack& stack);
  std::vector<Entry> merge_locked(const CombinerStack& stack,
                                  const RowRange* range,
                                  bool apply_spanning) const;
  std::shared_ptr<const SortedRun> make_run(std::vector<Entry> entries) const;

  const EngineConfig* config_;
  mutable std::mutex mu_;
  std::map<Key, std::vector<Bytes>> buffer_;  // multiset when no key-local
  std::vector<std::shared_ptr<const SortedRun>> runs_;
  std::size_t buffer_values_ = 0;
  std::size_t buffer_bytes_ = 0;
  std::size_t run_entries_ = 0;
  std::uint64_t write_count_ = 0;
  mutable std::uint64_t scan_count_ = 0;
};

class Table {
 public:
  Table(std::string name, SplitPoints splits, CombinerStack stack,
        EngineConfig config = {});

  // Tablets point back at config_, so the table must stay put.
  Table(const Table&) = delete;
  Table& operator=(const Table&) = delete;

  // Clone shares the source's immutable runs (the source is flushed first
  // so the clone sees everything); splits and combiner stack are copied.
  static std::unique_ptr<Table> clone_of(Table& source, std::string name);

  void put(const Entry& entry) { put(entry.key, entry.value); }
  void put(const Key& key, const Bytes& value);
  void flush();
  void compact();

  std::vector<Entry> scan() const;
  std::vector<Entry> scan(const RowRange& range) const;
  std::vector<Entry> scan_tablet(std::size_t index) const;

  const std::string& name() const { return name_; }
  const SplitPoints& splits() const { return splits_; }
  const CombinerStack& combiners() const { return stack_; }
  const EngineConfig& config() const { return config_; }
  std::size_t tablet_count() const { return tablets_.size(); }
  const Tablet& tablet(std::size_t index) const { return *tablets_[index]; }
  std::size_t entry_count() const;
  std::uint64_t write_count() const;

  std::size_t tablet_index_for_row(const Bytes& row) const;
  // Inclusive tablet index span intersecting `range`.
  std::pair<std::size_t, std::size_t> tablet_span(const RowRange& range) const;
  RowRange tablet_row_range(std::size_t index) const;

 private:
  std::string name_;
  SplitPoints splits_;
  CombinerStack stack_;
  EngineConfig config_;
  std::vector<std::unique_ptr<Tablet>> tablets_;
};

class Engine {
 public:
  explicit Engine(EngineConfig config = {});

  Table& create_table(const std::string& name, SplitPoints splits,
                      CombinerStack stack);
  Table& clone_table(const std::string& source, const std::string& dest);
  Table& table(const std::string& name);
  const Table& table(const std::string& name) const;
  bool has_table(const std::string& name) const;
  void drop_table(const std::string& name);
  std::string unique_name(const std::string& prefix);

  const EngineConfig& config() const { return config_; }

 private:
  EngineConfig config_;
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<Table>> tables_;
  std::atomic<std::uint64_t> name_seq_{0};
};

// Debug dump: row\tcolq\tvalue per line, non-printable bytes escaped.
void dump_tsv(const Table& table, std::ostream& out);

// Per-row entry counts in global row order (one scan per tablet).
std::vector<std::pair<Bytes, std::uint64_t>> row_counts(const Table& table);

// Run fn(0..n-1) on `workers` threads (0: hardware concurrency, capped at
// n). Exceptions from workers are rethrown on the caller thread.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace tritable
