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

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <vector>

#include "tritable/engine.hpp"
#include "tritable/schema.hpp"

namespace tritable::testutil {

inline EdgeList erdos_renyi(VertexId n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  EdgeList g;
  g.n_vertices = n;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId w = u + 1; w < n; ++w) {
      if (unit(rng) < p) g.edges.emplace_back(u, w);
    }
  }
  return g;
}

inline Key key(const Bytes& row, const Bytes& colq) { return Key{row, colq}; }

inline Entry entry(const Bytes& row, const Bytes& colq, std::uint64_t value) {
  return Entry{Key{row, colq}, encode_value(value)};
}

// Unique scratch directory under the system temp dir; removed on scope
// exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<std::uint64_t> seq{0};
    path_ = std::filesystem::temp_directory_path() /
            ("tritable-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(seq++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace tritable::testutil
