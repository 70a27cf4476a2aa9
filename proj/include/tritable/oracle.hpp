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
#include <vector>

#include "tritable/schema.hpp"

namespace tritable {

// Brute-force ground truth. Everything here works on EdgeList only — never
// on engine tables — so no bug can be shared with the system under test.

// Optional vertex ordering; unset means numeric order. A codec that does
// not preserve numeric order corresponds to passing its byte order here.
using VertexOrder = std::function<bool(VertexId, VertexId)>;

// Exact triangle count via sorted forward-adjacency intersection over
// ordered triples.
std::uint64_t brute_force_triangles(const EdgeList& g);

// Independent formulation: sum((L*U) .* A) / 2 evaluated on sparse maps.
std::uint64_t cohen_reference(const EdgeList& g);

// Sum over rows r of C(d_r, 2), where d_r is the forward degree of r under
// the orientation order.
std::uint64_t nppf_oracle_adjacency(const EdgeList& g,
                                    const VertexOrder& order = {});

// Double-loop count of (lower-adjacency entry, incidence entry) pairs that
// survive the rectangular upper-triangle filter.
std::uint64_t nppf_oracle_adj_incidence(const EdgeList& g);

// Per-key emission counts of the adjacency+incidence multiply.
struct EmissionHistogram {
  std::uint64_t total = 0;          // equals nppf_oracle_adj_incidence
  std::uint64_t keys_with_one = 0;  // lone markers
  std::uint64_t keys_with_two = 0;  // collapsed pairs, i.e. triangles
  std::uint64_t max_per_key = 0;
};
EmissionHistogram incidence_emission_histogram(const EdgeList& g);

struct SkewReport {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> degree_histogram;
  std::uint32_t max_degree = 0;
  double mean_degree = 0.0;  // 2*edges / n_vertices
  std::vector<std::uint64_t> per_tablet_load;  // sums to global nppf
  double imbalance_ratio = 1.0;                // max load / mean load
};

// Per-tablet wedge loads (sum of C(d_r,2) over rows in the tablet) under
// the given partition; `tablet_first_rows` lists the first row of each
// tablet after the initial one, mirroring engine split points.
SkewReport skew_report(const EdgeList& g,
                       const std::vector<VertexId>& tablet_first_rows);

double imbalance_ratio(std::span<const std::uint64_t> loads);

}  // namespace tritable
