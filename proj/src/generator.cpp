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

#include "tritable/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace tritable {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

// splitmix64: tiny, seedable, and splittable by construction — each edge
// index derives an independent stream, so generation order never matters.
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGoldenGamma);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double next_unit(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

void GraphSpec::validate() const {
  if (scale < 1 || scale > 30) {
    throw std::invalid_argument("scale must be in [1, 30]");
  }
  if (edge_factor < 1) {
    throw std::invalid_argument("edge_factor must be >= 1");
  }
  double sum = a + b + c + d;
  if (std::abs(sum - 1.0) > 1e-12 || a < 0 || b < 0 || c < 0 || d < 0) {
    throw std::invalid_argument("quadrant probabilities must sum to 1");
  }
}

std::vector<std::pair<VertexId, VertexId>> rmat_raw(const GraphSpec& spec) {
  spec.validate();
  const std::uint64_t n_edges =
      static_cast<std::uint64_t>(spec.edge_factor) << spec.scale;
  const double ab = spec.a + spec.b;
  const double abc = spec.a + spec.b + spec.c;

  std::vector<std::pair<VertexId, VertexId>> raw;
  raw.reserve(n_edges);
  for (std::uint64_t i = 0; i < n_edges; ++i) {
    std::uint64_t state = spec.seed + (i + 1) * kGoldenGamma;
    VertexId row = 0, col = 0;
    for (unsigned level = 0; level < spec.scale; ++level) {
      double u = next_unit(state);
      row <<= 1;
      col <<= 1;
      if (u < spec.a) {
        // top-left quadrant
      } else if (u < ab) {
        col |= 1;
      } else if (u < abc) {
        row |= 1;
      } else {
        row |= 1;
        col |= 1;
      }
    }
    raw.emplace_back(row, col);
  }
  return raw;
}

EdgeList symmetrize_simplify(
    const std::vector<std::pair<VertexId, VertexId>>& raw,
    VertexId n_vertices) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(raw.size() * 2);
  EdgeList g;
  g.n_vertices = n_vertices;
  for (auto [u, w] : raw) {
    if (u == w) continue;
    if (u > w) std::swap(u, w);
    std::uint64_t packed = (static_cast<std::uint64_t>(u) << 32) | w;
    if (seen.insert(packed).second) {
      g.edges.emplace_back(u, w);
      if (w >= g.n_vertices) g.n_vertices = w + 1;
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

EdgeList load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::vector<std::pair<std::string, std::string>> tokens;
  VertexId header_vertices = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream comment(line.substr(1));
      std::string word;
      if (comment >> word && word == "vertices") {
        std::uint64_t n = 0;
        if (comment >> n) header_vertices = static_cast<VertexId>(n);
      }
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected two tab-separated fields");
    }
    tokens.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }

  auto is_numeric = [](const std::string& s) {
    if (s.empty() || s.size() > 10) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  bool all_numeric = std::all_of(tokens.begin(), tokens.end(), [&](auto& t) {
    return is_numeric(t.first) && is_numeric(t.second);
  });

  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(tokens.size());
  if (all_numeric) {
    for (auto& [a, b] : tokens) {
      std::uint64_t u = std::stoull(a);
      std::uint64_t w = std::stoull(b);
      if (u > 0xffffffffull || w > 0xffffffffull) {
        throw std::runtime_error(path.string() + ": vertex id out of range");
      }
      pairs.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(w));
    }
  } else {
    // First-appearance dictionary for string labels.
    std::map<std::string, VertexId> dictionary;
    auto id_of = [&](const std::string& label) {
      auto [it, inserted] = dictionary.emplace(
          label, static_cast<VertexId>(dictionary.size()));
      (void)inserted;
      return it->second;
    };
    for (auto& [a, b] : tokens) pairs.emplace_back(id_of(a), id_of(b));
  }

  EdgeList g = EdgeList::from_pairs(0, pairs);
  if (header_vertices > g.n_vertices) g.n_vertices = header_vertices;
  return g;
}

void save_tsv(const EdgeList& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << "# vertices " << g.n_vertices << "\n";
  for (auto [u, w] : g.edges) out << u << '\t' << w << '\n';
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

EdgeList make_complete(VertexId n) {
  EdgeList g;
  g.n_vertices = n;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId w = u + 1; w < n; ++w) g.edges.emplace_back(u, w);
  }
  return g;
}

EdgeList make_path(VertexId n) {
  EdgeList g;
  g.n_vertices = n;
  for (VertexId u = 0; u + 1 < n; ++u) g.edges.emplace_back(u, u + 1);
  return g;
}

EdgeList make_star(VertexId n) {
  EdgeList g;
  g.n_vertices = n;
  for (VertexId w = 1; w < n; ++w) g.edges.emplace_back(0, w);
  return g;
}

EdgeList make_cycle(VertexId n) {
  EdgeList g;
  g.n_vertices = n;
  if (n < 3) return g;
  for (VertexId u = 0; u + 1 < n; ++u) g.edges.emplace_back(u, u + 1);
  g.edges.emplace_back(0, n - 1);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

EdgeList make_binary_tree(VertexId n) {
  EdgeList g;
  g.n_vertices = n;
  for (VertexId v = 1; v < n; ++v) g.edges.emplace_back((v - 1) / 2, v);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace tritable
