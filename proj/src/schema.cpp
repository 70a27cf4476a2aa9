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

#include "tritable/schema.hpp"

#include <algorithm>
#include <stdexcept>

namespace tritable {

EdgeList EdgeList::from_pairs(
    VertexId n_vertices,
    const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  EdgeList g;
  g.n_vertices = n_vertices;
  g.edges.reserve(pairs.size());
  for (auto [u, w] : pairs) {
    if (u == w) continue;
    if (u > w) std::swap(u, w);
    g.edges.emplace_back(u, w);
    if (w >= g.n_vertices) g.n_vertices = w + 1;
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

Bytes encode_vertex(VertexId v) {
  Bytes out(4, '\0');
  out[0] = static_cast<char>((v >> 24) & 0xff);
  out[1] = static_cast<char>((v >> 16) & 0xff);
  out[2] = static_cast<char>((v >> 8) & 0xff);
  out[3] = static_cast<char>(v & 0xff);
  return out;
}

VertexId decode_vertex(const Bytes& b) {
  if (b.size() != 4) {
    throw std::invalid_argument("vertex encoding must be 4 bytes, got " +
                                std::to_string(b.size()));
  }
  VertexId v = 0;
  for (char c : b) v = (v << 8) | static_cast<unsigned char>(c);
  return v;
}

Bytes encode_edge(VertexId u, VertexId w) {
  if (u == w) {
    throw std::invalid_argument("self-edge has no label: " +
                                std::to_string(u));
  }
  if (u > w) std::swap(u, w);
  return encode_vertex(u) + encode_vertex(w);
}

std::pair<VertexId, VertexId> decode_edge(const Bytes& b) {
  if (b.size() != 8) {
    throw std::invalid_argument("edge label must be 8 bytes, got " +
                                std::to_string(b.size()));
  }
  return {decode_vertex(b.substr(0, 4)), decode_vertex(b.substr(4, 4))};
}

VertexId DecimalStringCodec::decode(const Bytes& b) const {
  if (b.empty() || b.size() > 10) {
    throw std::invalid_argument("bad decimal vertex label: " + b);
  }
  std::uint64_t v = 0;
  for (char c : b) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("bad decimal vertex label: " + b);
    }
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (v > 0xffffffffull) {
    throw std::invalid_argument("decimal vertex label out of range: " + b);
  }
  return static_cast<VertexId>(v);
}

const VertexCodec& fixed_codec() {
  static const FixedWidthCodec codec;
  return codec;
}

const VertexCodec& decimal_string_codec() {
  static const DecimalStringCodec codec;
  return codec;
}

const VertexCodec& codec_by_name(const std::string& name) {
  if (name == "fixed") return fixed_codec();
  if (name == "decimal-string") return decimal_string_codec();
  throw std::invalid_argument("unknown encoding: " + name);
}

namespace {

Table& build_from_entries(std::vector<Entry> entries, Engine& engine,
                          std::size_t n_tablets, const std::string& name) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.key < b.key; });
  SplitPoints splits = compute_equal_splits(entries, n_tablets);
  Table& table = engine.create_table(name, std::move(splits), summing_stack());
  for (const Entry& e : entries) table.put(e);
  table.flush();
  table.compact();
  return table;
}

}  // namespace

Table& build_upper_adjacency(const EdgeList& g, Engine& engine,
                             std::size_t n_tablets, const std::string& name,
                             const VertexCodec& codec) {
  const Bytes one = encode_value(1);
  std::vector<Entry> entries;
  entries.reserve(g.edges.size());
  for (auto [u, w] : g.edges) {
    Bytes bu = codec.encode(u);
    Bytes bw = codec.encode(w);
    if (bw < bu) std::swap(bu, bw);  // orientation follows byte order
    entries.push_back(Entry{Key{std::move(bu), std::move(bw)}, one});
  }
  return build_from_entries(std::move(entries), engine, n_tablets, name);
}

Table& build_lower_adjacency(const EdgeList& g, Engine& engine,
                             std::size_t n_tablets, const std::string& name,
                             const VertexCodec& codec) {
  const Bytes one = encode_value(1);
  std::vector<Entry> entries;
  entries.reserve(g.edges.size());
  for (auto [u, w] : g.edges) {
    Bytes bu = codec.encode(u);
    Bytes bw = codec.encode(w);
    if (bw < bu) std::swap(bu, bw);
    entries.push_back(Entry{Key{std::move(bw), std::move(bu)}, one});
  }
  return build_from_entries(std::move(entries), engine, n_tablets, name);
}

Table& build_incidence(const EdgeList& g, Engine& engine,
                       std::size_t n_tablets, const std::string& name) {
  const Bytes one = encode_value(1);
  std::vector<Entry> entries;
  entries.reserve(2 * g.edges.size());
  for (auto [u, w] : g.edges) {
    Bytes label = encode_edge(u, w);
    entries.push_back(Entry{Key{encode_vertex(u), label}, one});
    entries.push_back(Entry{Key{encode_vertex(w), std::move(label)}, one});
  }
  return build_from_entries(std::move(entries), engine, n_tablets, name);
}

}  // namespace tritable
