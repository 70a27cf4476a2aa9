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
#include <string>
#include <utility>
#include <vector>

#include "tritable/bytes.hpp"
#include "tritable/engine.hpp"

namespace tritable {

using VertexId = std::uint32_t;

// Deduplicated undirected simple graph: edges store (min, max) pairs,
// sorted, no self-loops. Ground truth for the oracles.
struct EdgeList {
  VertexId n_vertices = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;

  std::size_t n_edges() const { return edges.size(); }

  // Normalize arbitrary pairs: drop self-loops, orient min-first,
  // deduplicate, sort. n_vertices grows to cover every endpoint.
  static EdgeList from_pairs(
      VertexId n_vertices,
      const std::vector<std::pair<VertexId, VertexId>>& pairs);
};

// Fixed 4-byte big-endian vertex encoding: byte order equals numeric order.
Bytes encode_vertex(VertexId v);
VertexId decode_vertex(const Bytes& b);  // throws on length != 4

// 8-byte edge label: the two endpoint encodings concatenated in ascending
// order. Self-edges are rejected.
Bytes encode_edge(VertexId u, VertexId w);
std::pair<VertexId, VertexId> decode_edge(const Bytes& b);

// Pluggable vertex encoding. Matrix orientation ("upper"/"lower") is
// defined by byte order of the encodings, so a non-order-preserving codec
// acts as a vertex permutation.
class VertexCodec {
 public:
  virtual ~VertexCodec() = default;
  virtual Bytes encode(VertexId v) const = 0;
  virtual VertexId decode(const Bytes& b) const = 0;
  virtual bool fixed_width() const = 0;
  virtual std::string name() const = 0;
};

class FixedWidthCodec final : public VertexCodec {
 public:
  Bytes encode(VertexId v) const override { return encode_vertex(v); }
  VertexId decode(const Bytes& b) const override { return decode_vertex(b); }
  bool fixed_width() const override { return true; }
  std::string name() const override { return "fixed"; }
};

// ASCII decimal encoding. Byte order differs from numeric order ("10" <
// "2"), which permutes rows and columns relative to the fixed codec.
class DecimalStringCodec final : public VertexCodec {
 public:
  Bytes encode(VertexId v) const override { return std::to_string(v); }
  VertexId decode(const Bytes& b) const override;
  bool fixed_width() const override { return false; }
  std::string name() const override { return "decimal-string"; }
};

const VertexCodec& fixed_codec();
const VertexCodec& decimal_string_codec();
const VertexCodec& codec_by_name(const std::string& name);

// Table builders. Each computes equal splits from the sorted entries,
// writes, flushes, and compacts so the splits take effect. Adjacency and
// incidence entries carry value 1; tables get a summing combiner stack.
Table& build_upper_adjacency(const EdgeList& g, Engine& engine,
                             std::size_t n_tablets, const std::string& name,
                             const VertexCodec& codec = fixed_codec());
Table& build_lower_adjacency(const EdgeList& g, Engine& engine,
                             std::size_t n_tablets, const std::string& name,
                             const VertexCodec& codec = fixed_codec());
// Two entries per edge, one per endpoint, column = edge label. Requires the
// fixed-width codec (labels must un-concatenate).
Table& build_incidence(const EdgeList& g, Engine& engine,
                       std::size_t n_tablets, const std::string& name);

}  // namespace tritable
