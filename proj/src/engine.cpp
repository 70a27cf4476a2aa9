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

#include "tritable/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace tritable {

namespace {

// Rough per-entry footprint used for flush/spill thresholds.
std::size_t entry_footprint(const Key& key, const Bytes& value) {
  return key.row.size() + key.colq.size() + value.size() + 48;
}

std::size_t entries_footprint(const std::vector<Entry>& entries) {
  std::size_t total = 0;
  for (const Entry& e : entries) total += entry_footprint(e.key, e.value);
  return total;
}

}  // namespace

Bytes encode_value(uint64_t v) {
  Bytes out(8, '\0');
  for (int i = 7; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<char>(v & 0xff);
    v >>= 8;
  }
  return out;
}

uint64_t decode_value(const Bytes& b) {
  if (b.size() != 8) {
    throw std::invalid_argument("decode_value: expected 8 bytes, got " +
                                std::to_string(b.size()));
  }
  uint64_t v = 0;
  for (char c : b) v = (v << 8) | static_cast<unsigned char>(c);
  return v;
}

std::string escape_bytes(const Bytes& b) {
  std::string out;
  out.reserve(b.size());
  for (char c : b) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f && c != '\\' && c != '\t') {
      out.push_back(c);
    } else {
      char hex[5];
      std::snprintf(hex, sizeof(hex), "\\x%02x", u);
      out.append(hex);
    }
  }
  return out;
}

Bytes SummingCombiner::combine(const Bytes& accumulated,
                               const Bytes& next) const {
  return encode_value(decode_value(accumulated) + decode_value(next));
}

// ---------------------------------------------------------------------------
// Sorted runs

namespace {

class MemRun final : public SortedRun {
 public:
  explicit MemRun(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  std::size_t size() const override { return entries_.size(); }
  std::unique_ptr<EntryCursor> open() const override;

 private:
  friend class MemCursor;
  std::vector<Entry> entries_;
};

class MemCursor final : public EntryCursor {
 public:
  explicit MemCursor(const std::vector<Entry>& entries) : entries_(entries) {}

  bool valid() const override { return pos_ < entries_.size(); }
  const Entry& entry() const override { return entries_[pos_]; }
  void advance() override { ++pos_; }
  void seek_row(const Bytes& row) override {
    pos_ = static_cast<std::size_t>(
        std::lower_bound(entries_.begin() + static_cast<std::ptrdiff_t>(pos_),
                         entries_.end(), row,
                         [](const Entry& e, const Bytes& r) {
                           return e.key.row < r;
                         }) -
        entries_.begin());
  }

 private:
  const std::vector<Entry>& entries_;
  std::size_t pos_ = 0;
};

std::unique_ptr<EntryCursor> MemRun::open() const {
  return std::make_unique<MemCursor>(entries_);
}

// Entries serialized as three u32 lengths followed by the raw bytes.
class FileRun final : public SortedRun {
 public:
  FileRun(std::filesystem::path path, std::size_t count)
      : path_(std::move(path)), count_(count) {}

  ~FileRun() override {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }

  static std::shared_ptr<const SortedRun> write(
      const std::filesystem::path& dir, const std::vector<Entry>& entries);

  std::size_t size() const override { return count_; }
  std::unique_ptr<EntryCursor> open() const override;

 private:
  std::filesystem::path path_;
  std::size_t count_;
};

class FileCursor final : public EntryCursor {
 public:
  FileCursor(const std::filesystem::path& path, std::size_t count)
      : in_(path, std::ios::binary), remaining_(count) {
    next();
  }

  bool valid() const override { return have_; }
  const Entry& entry() const override { return current_; }
  void advance() override { next(); }
  void seek_row(const Bytes& row) override {
    while (have_ && current_.key.row < row) next();
  }

 private:
  void next() {
    if (remaining_ == 0) {
      have_ = false;
      return;
    }
    --remaining_;
    uint32_t len[3];
    in_.read(reinterpret_cast<char*>(len), sizeof(len));
    auto read_bytes = [&](Bytes& out, uint32_t n) {
      out.resize(n);
      if (n > 0) in_.read(out.data(), n);
    };
    read_bytes(current_.key.row, len[0]);
    read_bytes(current_.key.colq, len[1]);
    read_bytes(current_.value, len[2]);
    have_ = in_.good() || (in_.eof() && remaining_ == 0);
    if (!in_.good() && !in_.eof()) {
      throw std::runtime_error("spill run read failed");
    }
  }

  std::ifstream in_;
  std::size_t remaining_;
  Entry current_;
  bool have_ = false;
};

std::unique_ptr<EntryCursor> FileRun::open() const {
  return std::make_unique<FileCursor>(path_, count_);
}

std::shared_ptr<const SortedRun> FileRun::write(
    const std::filesystem::path& dir, const std::vector<Entry>& entries) {
  static std::atomic<uint64_t> seq{0};
  std::filesystem::create_directories(dir);
  auto path = dir / ("run-" + std::to_string(seq++) + ".dat");
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot create spill run " + path.string());
    for (const Entry& e : entries) {
      uint32_t len[3] = {static_cast<uint32_t>(e.key.row.size()),
                         static_cast<uint32_t>(e.key.colq.size()),
                         static_cast<uint32_t>(e.value.size())};
      out.write(reinterpret_cast<const char*>(len), sizeof(len));
      out.write(e.key.row.data(), static_cast<std::streamsize>(len[0]));
      out.write(e.key.colq.data(), static_cast<std::streamsize>(len[1]));
      out.write(e.value.data(), static_cast<std::streamsize>(len[2]));
    }
    if (!out) throw std::runtime_error("spill run write failed");
  }
  return std::make_shared<FileRun>(std::move(path), entries.size());
}

// Iterates the buffer map, expanding per-key value lists in insert order.
class BufferCursor final : public EntryCursor {
 public:
  explicit BufferCursor(const std::map<Key, std::vector<Bytes>>& buffer)
      : buffer_(buffer), it_(buffer.begin()) {
    load();
  }

  bool valid() const override { return it_ != buffer_.end(); }
  const Entry& entry() const override { return current_; }
  void advance() override {
    ++value_index_;
    if (value_index_ >= it_->second.size()) {
      ++it_;
      value_index_ = 0;
    }
    load();
  }
  void seek_row(const Bytes& row) override {
    if (it_ != buffer_.end() && it_->first.row < row) {
      it_ = buffer_.lower_bound(Key{row, Bytes()});
      value_index_ = 0;
      load();
    }
  }

 private:
  void load() {
    if (it_ != buffer_.end()) {
      current_ = Entry{it_->first, it_->second[value_index_]};
    }
  }

  const std::map<Key, std::vector<Bytes>>& buffer_;
  std::map<Key, std::vector<Bytes>>::const_iterator it_;
  std::size_t value_index_ = 0;
  Entry current_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Tablet

void Tablet::put(const Key& key, const Bytes& value,
                 const CombinerStack& stack) {
  std::lock_guard lock(mu_);
  ++write_count_;
  auto& values = buffer_[key];
  if (stack.key_local && !values.empty()) {
    std::size_t before = values[0].size();
    values[0] = stack.key_local->combine(values[0], value);
    buffer_bytes_ += values[0].size();
    buffer_bytes_ -= std::min(buffer_bytes_, before);
  } else {
    if (values.empty()) buffer_bytes_ += entry_footprint(key, Bytes());
    values.push_back(value);
    buffer_bytes_ += value.size();
    ++buffer_values_;
  }
  if (buffer_bytes_ >= config_->buffer_flush_bytes) {
    flush_locked(stack);
    if (runs_.size() > config_->max_runs_per_tablet) compact_locked(stack);
  }
}

void Tablet::flush(const CombinerStack& stack) {
  std::lock_guard lock(mu_);
  flush_locked(stack);
}

void Tablet::compact(const CombinerStack& stack) {
  std::lock_guard lock(mu_);
  compact_locked(stack);
}

void Tablet::flush_locked(const CombinerStack&) {
  if (buffer_.empty()) return;  // empty buffer: no new run
  std::vector<Entry> entries;
  entries.reserve(buffer_values_);
  for (const auto& [key, values] : buffer_) {
    for (const Bytes& v : values) entries.push_back(Entry{key, v});
  }
  run_entries_ += entries.size();
  runs_.push_back(make_run(std::move(entries)));
  buffer_.clear();
  buffer_values_ = 0;
  buffer_bytes_ = 0;
}

void Tablet::compact_locked(const CombinerStack& stack) {
  std::vector<Entry> merged =
      merge_locked(stack, nullptr, /*apply_spanning=*/true);
  runs_.clear();
  run_entries_ = merged.size();
  if (!merged.empty()) runs_.push_back(make_run(std::move(merged)));
  buffer_.clear();
  buffer_values_ = 0;
  buffer_bytes_ = 0;
}

std::vector<Entry> Tablet::read(const CombinerStack& stack,
                                const RowRange* range) const {
  std::lock_guard lock(mu_);
  ++scan_count_;
  return merge_locked(stack, range, /*apply_spanning=*/true);
}

std::vector<Entry> Tablet::merge_locked(const CombinerStack& stack,
                                        const RowRange* range,
                                        bool apply_spanning) const {
  std::vector<std::unique_ptr<EntryCursor>> sources;
  sources.reserve(runs_.size() + 1);
  for (const auto& run : runs_) sources.push_back(run->open());
  sources.push_back(std::make_unique<BufferCursor>(buffer_));
  if (range && range->begin) {
    for (auto& s : sources) s->seek_row(*range->begin);
  }

  std::vector<Entry> out;
  for (;;) {
    // Oldest source wins ties so same-key values fold in arrival order.
    int best = -1;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      if (!sources[i]->valid()) continue;
      if (best < 0 || sources[i]->entry().key <
                          sources[static_cast<std::size_t>(best)]->entry().key) {
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    Key key = sources[static_cast<std::size_t>(best)]->entry().key;
    if (range && range->end && key.row >= *range->end) break;

    if (stack.key_local) {
      Bytes acc;
      bool first = true;
      for (auto& s : sources) {
        while (s->valid() && s->entry().key == key) {
          acc = first ? s->entry().value
                      : stack.key_local->combine(acc, s->entry().value);
          first = false;
          s->advance();
        }
      }
      out.push_back(Entry{std::move(key), std::move(acc)});
    } else {
      for (auto& s : sources) {
        while (s->valid() && s->entry().key == key) {
          out.push_back(s->entry());
          s->advance();
        }
      }
    }
  }

  if (apply_spanning) {
    for (const auto& combiner : stack.key_spanning) combiner->apply(out);
  }
  return out;
}

std::shared_ptr<const SortedRun> Tablet::make_run(
    std::vector<Entry> entries) const {
  if (config_->spill_dir &&
      entries_footprint(entries) >= config_->spill_min_bytes) {
    return FileRun::write(*config_->spill_dir, entries);
  }
  return std::make_shared<MemRun>(std::move(entries));
}

std::size_t Tablet::entry_count() const {
  std::lock_guard lock(mu_);
  return buffer_values_ + run_entries_;
}

std::uint64_t Tablet::write_count() const {
  std::lock_guard lock(mu_);
  return write_count_;
}

std::uint64_t Tablet::scan_count() const {
  std::lock_guard lock(mu_);
  return scan_count_;
}

std::size_t Tablet::run_count() const {
  std::lock_guard lock(mu_);
  return runs_.size();
}

std::vector<const SortedRun*> Tablet::run_ids() const {
  std::lock_guard lock(mu_);
  std::vector<const SortedRun*> ids;
  ids.reserve(runs_.size());
  for (const auto& r : runs_) ids.push_back(r.get());
  return ids;
}

// ---------------------------------------------------------------------------
// Table

Table::Table(std::string name, SplitPoints splits, CombinerStack stack,
             EngineConfig config)
    : name_(std::move(name)),
      splits_(std::move(splits)),
      stack_(std::move(stack)),
      config_(config) {
  for (std::size_t i = 1; i < splits_.boundaries.size(); ++i) {
    if (!(splits_.boundaries[i - 1] < splits_.boundaries[i])) {
      throw std::invalid_argument("split boundaries must strictly increase");
    }
  }
  tablets_.reserve(splits_.boundaries.size() + 1);
  for (std::size_t i = 0; i <= splits_.boundaries.size(); ++i) {
    tablets_.push_back(std::make_unique<Tablet>(&config_));
  }
}

std::unique_ptr<Table> Table::clone_of(Table& source, std::string name) {
  source.flush();  // the clone sees everything written so far
  auto clone = std::make_unique<Table>(std::move(name), source.splits_,
                                       source.stack_, source.config_);
  for (std::size_t i = 0; i < source.tablets_.size(); ++i) {
    Tablet& src = *source.tablets_[i];
    Tablet& dst = *clone->tablets_[i];
    std::lock_guard lock(src.mu_);
    dst.runs_ = src.runs_;  // shared immutable runs, no data copy
    dst.run_entries_ = src.run_entries_;
  }
  return clone;
}

void Table::put(const Key& key, const Bytes& value) {
  tablets_[tablet_index_for_row(key.row)]->put(key, value, stack_);
}

void Table::flush() {
  for (auto& t : tablets_) t->flush(stack_);
}

void Table::compact() {
  for (auto& t : tablets_) t->compact(stack_);
}

std::vector<Entry> Table::scan() const {
  std::vector<Entry> out;
  for (const auto& t : tablets_) {
    auto part = t->read(stack_);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<Entry> Table::scan(const RowRange& range) const {
  auto [first, last] = tablet_span(range);
  std::vector<Entry> out;
  for (std::size_t i = first; i <= last; ++i) {
    auto part = tablets_[i]->read(stack_, &range);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<Entry> Table::scan_tablet(std::size_t index) const {
  return tablets_[index]->read(stack_);
}

std::size_t Table::entry_count() const {
  std::size_t total = 0;
  for (const auto& t : tablets_) total += t->entry_count();
  return total;
}

std::uint64_t Table::write_count() const {
  std::uint64_t total = 0;
  for (const auto& t : tablets_) total += t->write_count();
  return total;
}

std::size_t Table::tablet_index_for_row(const Bytes& row) const {
  const auto& b = splits_.boundaries;
  // Number of boundaries <= row: tablet i covers [b[i-1], b[i]).
  return static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), row) -
                                  b.begin());
}

std::pair<std::size_t, std::size_t> Table::tablet_span(
    const RowRange& range) const {
  const auto& b = splits_.boundaries;
  std::size_t first = 0;
  std::size_t last = tablets_.size() - 1;
  if (range.begin) first = tablet_index_for_row(*range.begin);
  if (range.end) {
    // Rows strictly below `end` live in tablets whose first row < end.
    last = static_cast<std::size_t>(
        std::lower_bound(b.begin(), b.end(), *range.end) - b.begin());
  }
  return {first, std::min(last, tablets_.size() - 1)};
}

RowRange Table::tablet_row_range(std::size_t index) const {
  RowRange range;
  const auto& b = splits_.boundaries;
  if (index > 0) range.begin = b[index - 1];
  if (index < b.size()) range.end = b[index];
  return range;
}

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(EngineConfig config) : config_(config) {}

Table& Engine::create_table(const std::string& name, SplitPoints splits,
                            CombinerStack stack) {
  std::lock_guard lock(mu_);
  if (tables_.count(name)) {
    throw std::invalid_argument("table exists: " + name);
  }
  auto table = std::make_unique<Table>(name, std::move(splits),
                                       std::move(stack), config_);
  Table& ref = *table;
  tables_.emplace(name, std::move(table));
  return ref;
}

Table& Engine::clone_table(const std::string& source,
                           const std::string& dest) {
  std::lock_guard lock(mu_);
  auto it = tables_.find(source);
  if (it == tables_.end()) {
    throw std::invalid_argument("no such table: " + source);
  }
  if (tables_.count(dest)) {
    throw std::invalid_argument("table exists: " + dest);
  }
  auto clone = Table::clone_of(*it->second, dest);
  Table& ref = *clone;
  tables_.emplace(dest, std::move(clone));
  return ref;
}

Table& Engine::table(const std::string& name) {
  std::lock_guard lock(mu_);
  auto it = tables_.find(name);
  if (it == tables_.end()) {
    throw std::invalid_argument("no such table: " + name);
  }
  return *it->second;
}

const Table& Engine::table(const std::string& name) const {
  std::lock_guard lock(mu_);
  auto it = tables_.find(name);
  if (it == tables_.end()) {
    throw std::invalid_argument("no such table: " + name);
  }
  return *it->second;
}

bool Engine::has_table(const std::string& name) const {
  std::lock_guard lock(mu_);
  return tables_.count(name) > 0;
}

void Engine::drop_table(const std::string& name) {
  std::lock_guard lock(mu_);
  tables_.erase(name);
}

std::string Engine::unique_name(const std::string& prefix) {
  for (;;) {
    std::string candidate = prefix + "#" + std::to_string(name_seq_++);
    std::lock_guard lock(mu_);
    if (!tables_.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Splits

SplitPoints compute_equal_splits(std::span<const Entry> entries,
                                 std::size_t n_tablets) {
  if (n_tablets < 1) {
    throw std::invalid_argument("n_tablets must be >= 1");
  }
  SplitPoints splits;
  if (n_tablets == 1 || entries.empty()) return splits;

  // Row histogram in key order.
  std::vector<std::pair<Bytes, std::uint64_t>> rows;
  for (const Entry& e : entries) {
    if (rows.empty() || rows.back().first != e.key.row) {
      rows.emplace_back(e.key.row, 0);
    }
    ++rows.back().second;
  }

  std::vector<std::uint64_t> prefix(rows.size() + 1, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    prefix[r + 1] = prefix[r] + rows[r].second;
  }
  const std::uint64_t total = prefix.back();
  const double mean =
      static_cast<double>(total) / static_cast<double>(n_tablets);

  // Cuts are row indices starting each later tablet, strictly increasing,
  // in [1, rows.size()-1].
  using Cuts = std::vector<std::size_t>;

  auto count_of = [&](std::size_t tablet, const Cuts& c) {
    std::size_t lo = tablet == 0 ? 0 : c[tablet - 1];
    std::size_t hi = tablet == c.size() ? rows.size() : c[tablet];
    return prefix[hi] - prefix[lo];
  };
  // Lexicographic objective: max-min spread first, then sum of squared
  // deviations (escapes plateaus where a single move keeps the spread).
  auto objective = [&](const Cuts& c) {
    std::uint64_t lo = UINT64_MAX, hi = 0;
    double squares = 0;
    for (std::size_t t = 0; t <= c.size(); ++t) {
      std::uint64_t n = count_of(t, c);
      lo = std::min(lo, n);
      hi = std::max(hi, n);
      double d = static_cast<double>(n) - mean;
      squares += d * d;
    }
    return std::pair<std::uint64_t, double>(hi - lo, squares);
  };

  // Start 1: greedy against the recomputed remaining ideal.
  auto greedy_start = [&] {
    Cuts cuts;
    std::uint64_t remaining = total;
    std::size_t tablets_left = n_tablets;
    std::size_t i = 0;
    while (tablets_left > 1 && i < rows.size()) {
      double ideal =
          static_cast<double>(remaining) / static_cast<double>(tablets_left);
      std::uint64_t acc = 0;
      std::size_t j = i;
      while (j < rows.size()) {
        std::uint64_t with_next = acc + rows[j].second;
        if (acc > 0 && std::abs(static_cast<double>(with_next) - ideal) >=
                           std::abs(static_cast<double>(acc) - ideal)) {
          break;
        }
        acc = with_next;
        ++j;
      }
      if (j >= rows.size()) break;
      cuts.push_back(j);
      remaining -= acc;
      --tablets_left;
      i = j;
    }
    return cuts;
  };

  // Starts 2 and 3: cuts at the global quantile targets k*mean, rounded to
  // the nearest row boundary or always up.
  auto quantile_start = [&](bool round_up) {
    Cuts cuts;
    std::size_t j = 1;
    for (std::size_t k = 1; k < n_tablets && j < rows.size(); ++k) {
      double target = static_cast<double>(k) * mean;
      while (j < rows.size() && static_cast<double>(prefix[j]) < target) ++j;
      if (j >= rows.size()) break;
      std::size_t cut = j;
      if (!round_up && j > 1 && (cuts.empty() || cuts.back() < j - 1)) {
        double below = target - static_cast<double>(prefix[j - 1]);
        double above = static_cast<double>(prefix[j]) - target;
        if (below <= above) cut = j - 1;
      }
      if (!cuts.empty() && cut <= cuts.back()) cut = cuts.back() + 1;
      if (cut >= rows.size()) break;
      cuts.push_back(cut);
      j = cut + 1;
    }
    return cuts;
  };

  auto refine = [&](Cuts cuts) {
    if (cuts.empty()) return cuts;
    auto best = objective(cuts);
    bool improved = true;
    for (int pass = 0; pass < 200 && improved; ++pass) {
      improved = false;
      for (std::size_t k = 0; k < cuts.size(); ++k) {
        std::size_t lo_bound = (k == 0 ? 0 : cuts[k - 1]) + 1;
        std::size_t hi_bound =
            (k + 1 == cuts.size() ? rows.size() : cuts[k + 1]) - 1;
        for (std::size_t candidate :
             {cuts[k] > lo_bound ? cuts[k] - 1 : cuts[k],
              cuts[k] < hi_bound ? cuts[k] + 1 : cuts[k]}) {
          if (candidate == cuts[k]) continue;
          std::size_t saved = cuts[k];
          cuts[k] = candidate;
          auto trial = objective(cuts);
          if (trial < best) {
            best = trial;
            improved = true;
          } else {
            cuts[k] = saved;
          }
        }
      }
    }
    return cuts;
  };

  Cuts best_cuts;
  std::pair<std::uint64_t, double> best_value{UINT64_MAX, 0};
  for (Cuts start : {greedy_start(), quantile_start(false),
                     quantile_start(true)}) {
    Cuts cuts = refine(std::move(start));
    auto value = objective(cuts);
    if (best_cuts.empty() || value < best_value) {
      best_cuts = std::move(cuts);
      best_value = value;
    }
  }

  for (std::size_t cut : best_cuts) {
    splits.boundaries.push_back(rows[cut].first);
  }
  return splits;
}

// ---------------------------------------------------------------------------
// Helpers

void dump_tsv(const Table& table, std::ostream& out) {
  for (const Entry& e : table.scan()) {
    out << escape_bytes(e.key.row) << '\t' << escape_bytes(e.key.colq) << '\t'
        << escape_bytes(e.value) << '\n';
  }
}

std::vector<std::pair<Bytes, std::uint64_t>> row_counts(const Table& table) {
  std::vector<std::pair<Bytes, std::uint64_t>> counts;
  for (std::size_t i = 0; i < table.tablet_count(); ++i) {
    for (const Entry& e : table.scan_tablet(i)) {
      if (counts.empty() || counts.back().first != e.key.row) {
        counts.emplace_back(e.key.row, 0);
      }
      ++counts.back().second;
    }
  }
  return counts;
}

void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (workers == 0) workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back(body);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tritable
