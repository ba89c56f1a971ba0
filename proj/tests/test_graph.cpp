#include "gaugekit/graph.hpp"

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "gaugekit/errors.hpp"
#include "gaugekit/homology.hpp"
#include "support/helpers.hpp"

using gaugekit::BlowUpTree;
using gaugekit::CycleBasis;
using gaugekit::SpanningTree;
using gaugekit::WeightedGraph;
using gaugekit::invalid_input;

namespace {

WeightedGraph path3() {
  return WeightedGraph::build(3, {{0, 1, 1.0}, {1, 2, 1.0}});
}

WeightedGraph k4() {
  return WeightedGraph::build(
      4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
}

WeightedGraph cycle4() {
  return WeightedGraph::build(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}});
}

// Brute-force triple enumeration: the slow-but-direct triangle oracle.
std::vector<std::array<int, 3>> brute_triangles(const WeightedGraph& g) {
  std::vector<std::array<int, 3>> out;
  const int n = g.node_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (g.adjacent(i, j) && g.adjacent(j, k) && g.adjacent(i, k)) out.push_back({i, j, k});
  return out;
}

// Dense Z/2 elimination over plain ints, independent of the bitset-packed
// implementation under test.
int dense_rank_mod2(std::vector<std::vector<int>> rows) {
  if (rows.empty()) return 0;
  const size_t cols = rows[0].size();
  int rank = 0;
  size_t pivot_row = 0;
  for (size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    size_t p = pivot_row;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[pivot_row]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r != pivot_row && rows[r][c]) {
        for (size_t cc = 0; cc < cols; ++cc) rows[r][cc] ^= rows[pivot_row][cc];
      }
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

int oracle_rank_d2(const WeightedGraph& g) {
  const auto tris = brute_triangles(g);
  std::vector<std::vector<int>> rows;
  for (const auto& [i, j, k] : tris) {
    std::vector<int> row(static_cast<size_t>(g.edge_count()), 0);
    row[static_cast<size_t>(g.edge_between(i, j))] = 1;
    row[static_cast<size_t>(g.edge_between(j, k))] = 1;
    row[static_cast<size_t>(g.edge_between(i, k))] = 1;
    rows.push_back(std::move(row));
  }
  return dense_rank_mod2(rows);
}

}  // namespace

TEST_CASE("build_graph validates structure, weights, and connectivity") {
  const WeightedGraph g = path3();
  CHECK(g.z(0) == 1.0);
  CHECK(g.z(1) == 2.0);
  CHECK(g.z(2) == 1.0);

  CHECK_THROWS_AS(WeightedGraph::build(2, {{0, 1, 1.0}, {1, 0, 1.0}}), invalid_input);
  CHECK_THROWS_AS(WeightedGraph::build(4, {{0, 1, 1.0}, {2, 3, 1.0}}), invalid_input);
  CHECK_THROWS_AS(WeightedGraph::build(2, {{0, 0, 1.0}, {0, 1, 1.0}}), invalid_input);
  CHECK_THROWS_AS(WeightedGraph::build(2, {{0, 1, -2.0}}), invalid_input);
  CHECK_THROWS_AS(WeightedGraph::build(1, {}), invalid_input);

  // Orientation is normalized to tail > head regardless of input order.
  const WeightedGraph h = WeightedGraph::build(3, {{0, 2, 0.5}, {2, 1, 2.0}});
  for (const auto& e : h.edges()) CHECK(e.tail > e.head);
  CHECK(h.edge_between(0, 2) == 0);
  CHECK(h.edge_between(2, 0) == 0);
  CHECK(h.edge_between(0, 1) == -1);
}

TEST_CASE("spanning_tree splits edges into tree and cotree deterministically") {
  const WeightedGraph tree = path3();
  CHECK(gaugekit::spanning_tree(tree).cotree_edges.empty());

  const WeightedGraph tri = WeightedGraph::build(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const SpanningTree t = gaugekit::spanning_tree(tri);
  CHECK(t.cotree_edges.size() == 1);
  CHECK(t.tree_edges.size() == 2);

  const WeightedGraph grid = WeightedGraph::build(9, testkit::grid_edges(3));
  CHECK(grid.edge_count() == 12);
  CHECK(gaugekit::spanning_tree(grid).cotree_edges.size() == 4);

  CHECK_THROWS_AS(gaugekit::spanning_tree(tree, 5), invalid_input);
}

TEST_CASE("spanning_tree on random graphs keeps the cotree count invariant") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const int extra = static_cast<int>(rng() % 7);
    const WeightedGraph g = WeightedGraph::build(n, testkit::random_edges(n, extra, rng));
    const SpanningTree t = gaugekit::spanning_tree(g);
    CHECK(static_cast<int>(t.tree_edges.size()) == n - 1);
    CHECK(static_cast<int>(t.cotree_edges.size()) == g.edge_count() - n + 1);
    for (int v : t.bfs_order)
      if (v != t.root) CHECK(t.parent[static_cast<size_t>(v)] >= 0);
  }
}

TEST_CASE("triangles enumerates 3-cliques lexicographically") {
  CHECK(gaugekit::triangles(cycle4()).empty());

  const auto k4_tris = gaugekit::triangles(k4());
  REQUIRE(k4_tris.size() == 4);
  CHECK(std::is_sorted(k4_tris.begin(), k4_tris.end()));

  std::mt19937_64 rng(911);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const WeightedGraph g =
        WeightedGraph::build(n, testkit::random_edges(n, static_cast<int>(rng() % 12), rng));
    CHECK(gaugekit::triangles(g) == brute_triangles(g));
  }
}

TEST_CASE("boundary matrices have the right shape and compose to zero") {
  const WeightedGraph single = WeightedGraph::build(2, {{0, 1, 1.0}});
  const auto b1 = gaugekit::boundary_matrices(single);
  REQUIRE(b1.d1.col_count() == 1);
  CHECK(b1.d1.cols[0].get(0));
  CHECK(b1.d1.cols[0].get(1));
  CHECK(b1.d2.col_count() == 0);

  const WeightedGraph tri = WeightedGraph::build(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  CHECK(gaugekit::boundaries_compose_to_zero(gaugekit::boundary_matrices(tri)));

  CHECK(gaugekit::z2_rank(gaugekit::boundary_matrices(k4()).d2) == 3);
  CHECK(oracle_rank_d2(k4()) == 3);

  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const WeightedGraph g =
        WeightedGraph::build(n, testkit::random_edges(n, static_cast<int>(rng() % 14), rng));
    const auto b = gaugekit::boundary_matrices(g);
    CHECK(gaugekit::boundaries_compose_to_zero(b));
    CHECK(gaugekit::z2_rank(b.d2) == oracle_rank_d2(g));
  }
}

TEST_CASE("homology_basis counts independent non-triangle cycles") {
  const WeightedGraph tree = path3();
  const CycleBasis none = gaugekit::homology_basis(tree, gaugekit::spanning_tree(tree));
  CHECK(none.h1 == 0);
  CHECK(none.cycles.empty());

  const WeightedGraph c4 = cycle4();
  const CycleBasis one = gaugekit::homology_basis(c4, gaugekit::spanning_tree(c4));
  REQUIRE(one.h1 == 1);
  REQUIRE(one.cycles.size() == 1);
  // The only basis cycle is the 4-cycle itself.
  CHECK(one.cycles[0].size() == 5);
  std::set<int> visited(one.cycles[0].begin(), one.cycles[0].end());
  CHECK(visited == std::set<int>{0, 1, 2, 3});

  // K4 is fully triangulated: cycle rank 3, all killed by triangles.
  const WeightedGraph k = k4();
  CHECK(gaugekit::homology_basis(k, gaugekit::spanning_tree(k)).h1 == 0);
}

TEST_CASE("homology h1 matches the independent dense elimination on random graphs") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const WeightedGraph g =
        WeightedGraph::build(n, testkit::random_edges(n, static_cast<int>(rng() % 14), rng));
    const SpanningTree t = gaugekit::spanning_tree(g);
    const CycleBasis basis = gaugekit::homology_basis(g, t);
    const int cycle_rank = g.edge_count() - n + 1;
    CHECK(basis.h1 == cycle_rank - oracle_rank_d2(g));
    CHECK(static_cast<int>(basis.cycles.size()) == basis.h1);

    // Each basis element must be a simple cycle in the graph.
    for (const auto& cycle : basis.cycles) {
      REQUIRE(cycle.size() >= 4);
      CHECK(cycle.front() == cycle.back());
      std::set<int> interior(cycle.begin(), cycle.end() - 1);
      CHECK(interior.size() == cycle.size() - 1);
      for (size_t s = 0; s + 1 < cycle.size(); ++s) CHECK(g.adjacent(cycle[s], cycle[s + 1]));
    }
  }
}

TEST_CASE("fundamental cycles are simple and close over their cotree edge") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 7);
    const WeightedGraph g =
        WeightedGraph::build(n, testkit::random_edges(n, 1 + static_cast<int>(rng() % 8), rng));
    const SpanningTree t = gaugekit::spanning_tree(g);
    for (int e : t.cotree_edges) {
      const auto cycle = gaugekit::fundamental_cycle(g, t, e);
      CHECK(cycle.front() == cycle.back());
      CHECK(cycle.front() == g.edge(e).tail);
      CHECK(cycle[cycle.size() - 2] == g.edge(e).head);
      std::set<int> interior(cycle.begin(), cycle.end() - 1);
      CHECK(interior.size() == cycle.size() - 1);
    }
  }
}

TEST_CASE("blow_up attaches one leaf per cotree edge") {
  const WeightedGraph tree = path3();
  const BlowUpTree same = gaugekit::blow_up(tree, gaugekit::spanning_tree(tree));
  CHECK(same.tree.node_count() == 3);
  CHECK(same.tree.edge_count() == 2);
  CHECK(same.pi == std::vector<int>{0, 1, 2});

  const WeightedGraph tri = WeightedGraph::build(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const SpanningTree tri_tree = gaugekit::spanning_tree(tri);
  REQUIRE(tri_tree.cotree_edges.size() == 1);
  const BlowUpTree b = gaugekit::blow_up(tri, tri_tree);
  CHECK(b.tree.node_count() == 4);
  CHECK(b.tree.edge_count() == 3);
  const int blown_tail = tri.edge(tri_tree.cotree_edges[0]).tail;
  int fiber_of_blown = 0;
  for (int v = 0; v < b.tree.node_count(); ++v)
    if (b.pi[static_cast<size_t>(v)] == blown_tail) ++fiber_of_blown;
  CHECK(fiber_of_blown == 2);

  const WeightedGraph grid = WeightedGraph::build(9, testkit::grid_edges(3));
  CHECK(gaugekit::blow_up(grid, gaugekit::spanning_tree(grid)).tree.node_count() == 13);
}

TEST_CASE("blow_up invariants hold on random graphs") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const WeightedGraph g =
        WeightedGraph::build(n, testkit::random_edges(n, static_cast<int>(rng() % 10), rng));
    const SpanningTree t = gaugekit::spanning_tree(g);
    const BlowUpTree b = gaugekit::blow_up(g, t);

    CHECK(b.tree.node_count() == n + static_cast<int>(t.cotree_edges.size()));
    CHECK(b.tree.edge_count() == g.edge_count());
    CHECK(gaugekit::spanning_tree(b.tree).cotree_edges.empty());

    // π is surjective and the identity on original vertices.
    std::set<int> image(b.pi.begin(), b.pi.end());
    CHECK(static_cast<int>(image.size()) == n);
    for (int v = 0; v < n; ++v) CHECK(b.pi[static_cast<size_t>(v)] == v);

    for (int be = 0; be < b.tree.edge_count(); ++be) {
      const auto& lifted = b.tree.edge(be);
      const auto& orig = g.edge(b.edge_to_orig[static_cast<size_t>(be)]);
      // Weight inheritance κ̃_{IJ} = κ_{π(I)π(J)} and endpoint projection.
      CHECK(lifted.weight == orig.weight);
      const int pt = b.pi[static_cast<size_t>(lifted.tail)];
      const int ph = b.pi[static_cast<size_t>(lifted.head)];
      CHECK(((pt == orig.tail && ph == orig.head) || (pt == orig.head && ph == orig.tail)));
      CHECK(b.orig_to_edge[static_cast<size_t>(b.edge_to_orig[static_cast<size_t>(be)])] == be);
      // Cotree edges land on degree-1 leaves, tree edges between originals.
      if (t.in_tree[static_cast<size_t>(b.edge_to_orig[static_cast<size_t>(be)])]) {
        CHECK(lifted.tail < n);
        CHECK(lifted.head < n);
      } else {
        CHECK(lifted.tail >= n);
        CHECK(b.tree.neighbors(lifted.tail).size() == 1);
      }
    }
  }
}

TEST_CASE("weights_from_embedding applies the inverse-square rule") {
  const WeightedGraph unit = gaugekit::weights_from_embedding(2, {{0, 1}}, {1.0});
  CHECK(unit.edge(0).weight == 1.0);
  const WeightedGraph two = gaugekit::weights_from_embedding(2, {{0, 1}}, {2.0});
  CHECK(two.edge(0).weight == 0.25);
  const WeightedGraph g = gaugekit::weights_from_embedding(3, {{0, 1}, {1, 2}}, {0.5, 0.1});
  CHECK(g.edge(0).weight == Catch::Approx(4.0));
  CHECK(g.edge(1).weight == Catch::Approx(100.0));
  CHECK_THROWS_AS(gaugekit::weights_from_embedding(2, {{0, 1}}, {0.0}), invalid_input);
}
