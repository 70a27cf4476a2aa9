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

#include "tritable/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace tritable {

namespace {

std::vector<std::vector<VertexId>> forward_adjacency(const EdgeList& g) {
  std::vector<std::vector<VertexId>> adj(g.n_vertices);
  for (auto [u, w] : g.edges) adj[u].push_back(w);  // edges are min-first
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::vector<std::vector<VertexId>> full_adjacency(const EdgeList& g) {
  std::vector<std::vector<VertexId>> adj(g.n_vertices);
  for (auto [u, w] : g.edges) {
    adj[u].push_back(w);
    adj[w].push_back(u);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::uint64_t intersection_size(const std::vector<VertexId>& a,
                                const std::vector<VertexId>& b) {
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

std::uint64_t choose2(std::uint64_t d) { return d * (d - 1) / 2; }

}  // namespace

std::uint64_t brute_force_triangles(const EdgeList& g) {
  auto adj = forward_adjacency(g);
  std::uint64_t triangles = 0;
  for (auto [u, v] : g.edges) triangles += intersection_size(adj[u], adj[v]);
  return triangles;
}

std::uint64_t cohen_reference(const EdgeList& g) {
  // B = L*U accumulated per wedge apex; C = B .* A; t = sum(C)/2.
  auto full = full_adjacency(g);
  std::unordered_map<std::uint64_t, std::uint64_t> wedge_counts;
  for (VertexId apex = 0; apex < g.n_vertices; ++apex) {
    const auto& neighbors = full[apex];
    auto above = std::upper_bound(neighbors.begin(), neighbors.end(), apex);
    for (auto j = above; j != neighbors.end(); ++j) {
      for (auto k = above; k != neighbors.end(); ++k) {
        if (*j == *k) continue;  // diagonal is masked by A anyway
        std::uint64_t key = (static_cast<std::uint64_t>(*j) << 32) | *k;
        ++wedge_counts[key];
      }
    }
  }
  std::uint64_t masked_sum = 0;
  for (auto [u, w] : g.edges) {
    auto it = wedge_counts.find((static_cast<std::uint64_t>(u) << 32) | w);
    if (it != wedge_counts.end()) masked_sum += it->second;
    it = wedge_counts.find((static_cast<std::uint64_t>(w) << 32) | u);
    if (it != wedge_counts.end()) masked_sum += it->second;
  }
  if (masked_sum % 2 != 0) {
    throw std::logic_error("cohen_reference: masked wedge sum must be even");
  }
  return masked_sum / 2;
}

std::uint64_t nppf_oracle_adjacency(const EdgeList& g,
                                    const VertexOrder& order) {
  std::unordered_map<VertexId, std::uint64_t> forward_degree;
  for (auto [u, w] : g.edges) {
    VertexId head = u;
    if (order && order(w, u)) head = w;
    ++forward_degree[head];
  }
  std::uint64_t nppf = 0;
  for (auto [v, d] : forward_degree) nppf += choose2(d);
  return nppf;
}

std::uint64_t nppf_oracle_adj_incidence(const EdgeList& g) {
  return incidence_emission_histogram(g).total;
}

EmissionHistogram incidence_emission_histogram(const EdgeList& g) {
  // Lower-adjacency row of v: neighbors below v. Incidence row of v: labels
  // of edges incident on v. A pair emits at key (v1, [v2,v3]) iff v1 < v2.
  std::vector<std::vector<VertexId>> below(g.n_vertices);
  std::vector<std::vector<std::pair<VertexId, VertexId>>> incident(
      g.n_vertices);
  for (auto [u, w] : g.edges) {
    below[w].push_back(u);
    incident[u].emplace_back(u, w);
    incident[w].emplace_back(u, w);
  }

  std::map<std::tuple<VertexId, VertexId, VertexId>, std::uint64_t> per_key;
  for (VertexId v = 0; v < g.n_vertices; ++v) {
    for (VertexId v1 : below[v]) {
      for (auto [v2, v3] : incident[v]) {
        if (v1 < v2) ++per_key[{v1, v2, v3}];
      }
    }
  }

  EmissionHistogram hist;
  for (const auto& [key, count] : per_key) {
    hist.total += count;
    if (count == 1) ++hist.keys_with_one;
    if (count == 2) ++hist.keys_with_two;
    hist.max_per_key = std::max(hist.max_per_key, count);
  }
  return hist;
}

double imbalance_ratio(std::span<const std::uint64_t> loads) {
  if (loads.empty()) return 1.0;
  std::uint64_t total = 0;
  std::uint64_t max_load = 0;
  for (std::uint64_t load : loads) {
    total += load;
    max_load = std::max(max_load, load);
  }
  if (total == 0) return 1.0;
  double mean = static_cast<double>(total) / static_cast<double>(loads.size());
  return static_cast<double>(max_load) / mean;
}

SkewReport skew_report(const EdgeList& g,
                       const std::vector<VertexId>& tablet_first_rows) {
  SkewReport report;

  std::vector<std::uint32_t> degree(g.n_vertices, 0);
  std::vector<std::uint64_t> forward(g.n_vertices, 0);
  for (auto [u, w] : g.edges) {
    ++degree[u];
    ++degree[w];
    ++forward[u];
  }

  std::map<std::uint32_t, std::uint64_t> histogram;
  for (std::uint32_t d : degree) {
    ++histogram[d];
    report.max_degree = std::max(report.max_degree, d);
  }
  report.degree_histogram.assign(histogram.begin(), histogram.end());
  report.mean_degree =
      g.n_vertices == 0
          ? 0.0
          : 2.0 * static_cast<double>(g.n_edges()) / g.n_vertices;

  report.per_tablet_load.assign(tablet_first_rows.size() + 1, 0);
  for (VertexId v = 0; v < g.n_vertices; ++v) {
    auto tablet = static_cast<std::size_t>(
        std::upper_bound(tablet_first_rows.begin(), tablet_first_rows.end(),
                         v) -
        tablet_first_rows.begin());
    report.per_tablet_load[tablet] += choose2(forward[v]);
  }
  report.imbalance_ratio = imbalance_ratio(report.per_tablet_load);
  return report;
}

}  // namespace tritable
