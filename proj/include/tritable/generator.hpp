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
#include <vector>

#include "tritable/schema.hpp"

namespace tritable {

// Recursive-quadrant power-law generator parameters. n_vertices = 2^scale,
// raw edge count = edge_factor * 2^scale, quadrant probabilities (a,b,c,d)
// sum to 1. No vertex permutation is applied.
struct GraphSpec {
  unsigned scale = 10;
  unsigned edge_factor = 16;
  double a = 0.57, b = 0.19, c = 0.19, d = 0.05;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

// Raw directed pairs, duplicates and self-loops included. Each edge draws
// its own PRNG stream from (seed, edge index), so the output is identical
// regardless of evaluation order.
std::vector<std::pair<VertexId, VertexId>> rmat_raw(const GraphSpec& spec);

// Drop self-loops, fold direction, deduplicate.
EdgeList symmetrize_simplify(
    const std::vector<std::pair<VertexId, VertexId>>& raw,
    VertexId n_vertices);

inline EdgeList rmat_graph(const GraphSpec& spec) {
  return symmetrize_simplify(rmat_raw(spec), VertexId(1) << spec.scale);
}

// TSV edge list: `u<TAB>w` per line, '#' starts a comment. save_tsv writes
// a `# vertices N` header so isolated vertices survive a round trip;
// load_tsv honors it when present. Non-integer tokens are mapped through a
// first-appearance dictionary.
EdgeList load_tsv(const std::filesystem::path& path);
void save_tsv(const EdgeList& g, const std::filesystem::path& path);

// Canonical fixtures (n = number of vertices).
EdgeList make_complete(VertexId n);
EdgeList make_path(VertexId n);
EdgeList make_star(VertexId n);
EdgeList make_cycle(VertexId n);
EdgeList make_binary_tree(VertexId n);

}  // namespace tritable
