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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "testutil.hpp"
#include "tritable/generator.hpp"
#include "tritable/oracle.hpp"

using namespace tritable;

TEST_CASE("brute force on canonical graphs") {
  CHECK(brute_force_triangles(make_complete(3)) == 1);
  CHECK(brute_force_triangles(make_complete(5)) == 10);  // C(5,3)
  CHECK(brute_force_triangles(make_path(10)) == 0);
  CHECK(brute_force_triangles(make_star(10)) == 0);
  CHECK(brute_force_triangles(make_cycle(6)) == 0);
  CHECK(brute_force_triangles(make_binary_tree(15)) == 0);
  CHECK(brute_force_triangles(EdgeList{}) == 0);
}

TEST_CASE("cohen reference on canonical graphs") {
  CHECK(cohen_reference(make_complete(3)) == 1);
  CHECK(cohen_reference(make_complete(4)) == 4);  // C(4,3)
  CHECK(cohen_reference(make_path(7)) == 0);
}

TEST_CASE("the two formulations agree on random graphs") {
  std::uint64_t seed = 1;
  for (int trial = 0; trial < 100; ++trial) {
    double p = (trial % 3 == 0) ? 0.1 : (trial % 3 == 1) ? 0.3 : 0.6;
    EdgeList g = testutil::erdos_renyi(4 + trial % 40, p, seed++);
    CHECK(brute_force_triangles(g) == cohen_reference(g));
  }
}

TEST_CASE("nppf oracles on worked examples") {
  EdgeList k3 = EdgeList::from_pairs(4, {{1, 2}, {1, 3}, {2, 3}});
  CHECK(nppf_oracle_adjacency(k3) == 1);      // only row 1 has two columns
  CHECK(nppf_oracle_adj_incidence(k3) == 2);  // rows 2 and 3 emit one each

  EdgeList path = make_path(8);
  CHECK(nppf_oracle_adjacency(path) == 0);
  // Each interior vertex v emits one lone marker: its below-neighbor v-1
  // paired with edge [v,v+1] passes the v1 < v2 filter. Six interior
  // vertices on an 8-vertex path.
  CHECK(nppf_oracle_adj_incidence(path) == 6);
  auto path_hist = incidence_emission_histogram(path);
  CHECK(path_hist.keys_with_one == 6);
  CHECK(path_hist.keys_with_two == 0);

  // K4: forward degrees 3,2,1 -> C(3,2)+C(2,2) = 3+1 = 4
  CHECK(nppf_oracle_adjacency(make_complete(4)) == 4);
}

TEST_CASE("nppf oracle under a custom order") {
  // Star centered on 2 over {0..10}: numeric order gives row 2 forward
  // degree 8 -> C(8,2) = 28. Decimal-string order moves 10 before 2, so
  // row 2 keeps 7 -> C(7,2) = 21.
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId v : {0u, 1u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u}) {
    pairs.emplace_back(2, v);
  }
  EdgeList star = EdgeList::from_pairs(11, pairs);
  CHECK(nppf_oracle_adjacency(star) == 28);
  auto by_string = [](VertexId a, VertexId b) {
    return std::to_string(a) < std::to_string(b);
  };
  CHECK(nppf_oracle_adjacency(star, by_string) == 21);
}

TEST_CASE("incidence emission histogram") {
  EdgeList k3 = EdgeList::from_pairs(4, {{1, 2}, {1, 3}, {2, 3}});
  auto hist = incidence_emission_histogram(k3);
  CHECK(hist.total == 2);
  CHECK(hist.keys_with_two == 1);  // the triangle key (1, [2,3])
  CHECK(hist.keys_with_one == 0);
  CHECK(hist.max_per_key == 2);

  auto star_hist = incidence_emission_histogram(make_star(8));
  CHECK(star_hist.keys_with_two == 0);
  CHECK(star_hist.max_per_key <= 2);
}

namespace {

// Ring lattice: every vertex connects to the next `skips` vertices mod n.
EdgeList make_ring_lattice(VertexId n, VertexId skips) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId s = 1; s <= skips; ++s) pairs.emplace_back(v, (v + s) % n);
  }
  return EdgeList::from_pairs(n, pairs);
}

}  // namespace

TEST_CASE("skew report") {
  SUBCASE("regular ring with an even split stays balanced") {
    // Uniform forward degree except at the wrap seam, so the ratio sits
    // just above 1.
    EdgeList ring = make_ring_lattice(2400, 2);
    SkewReport report = skew_report(ring, {600, 1200, 1800});
    CHECK(report.max_degree == 4);
    CHECK(report.mean_degree == doctest::Approx(4.0));
    CHECK(report.imbalance_ratio < 1.02);
    std::uint64_t total = 0;
    for (auto load : report.per_tablet_load) total += load;
    CHECK(total == nppf_oracle_adjacency(ring));
  }
  SUBCASE("star hub loads a single tablet") {
    EdgeList star = make_star(100);  // hub 0 has forward degree 99
    SkewReport report = skew_report(star, {50});
    CHECK(report.per_tablet_load[0] == 99 * 98 / 2);
    CHECK(report.per_tablet_load[1] == 0);
    CHECK(report.max_degree == 99);
  }
  SUBCASE("loads sum to the adjacency nppf") {
    EdgeList g = testutil::erdos_renyi(60, 0.3, 17);
    SkewReport report = skew_report(g, {20, 40});
    std::uint64_t total = 0;
    for (auto load : report.per_tablet_load) total += load;
    CHECK(total == nppf_oracle_adjacency(g));
  }
  SUBCASE("power-law graph with equal splits reports imbalance above 1") {
    GraphSpec spec;
    spec.scale = 12;
    spec.seed = 4;
    EdgeList g = rmat_graph(spec);
    std::vector<VertexId> first_rows;
    for (int i = 1; i < 24; ++i) {
      first_rows.push_back(static_cast<VertexId>(i * g.n_vertices / 24));
    }
    SkewReport report = skew_report(g, first_rows);
    CHECK(report.imbalance_ratio > 1.0);
  }
}

TEST_CASE("imbalance ratio edge cases") {
  CHECK(imbalance_ratio({}) == doctest::Approx(1.0));
  std::vector<std::uint64_t> zeros{0, 0, 0};
  CHECK(imbalance_ratio(zeros) == doctest::Approx(1.0));
  std::vector<std::uint64_t> loads{9, 3, 0};
  CHECK(imbalance_ratio(loads) == doctest::Approx(9.0 / 4.0));
}
