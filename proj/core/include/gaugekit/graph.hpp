#pragma once

#include <array>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

namespace gaugekit {

/// One undirected edge stored in its positive orientation tail > head,
/// carrying the symmetric weight κ.
struct Edge {
  int tail = 0;
  int head = 0;
  double weight = 0.0;
};

/**
 * A finite, simple, connected graph with strictly positive symmetric edge
 * weights. Edges keep their insertion order (several algorithms are pinned to
 * it for reproducibility) but are normalized to the tail > head orientation.
 * Weighted degrees Z_i = Σ_j κ_ij are precomputed; graphs are immutable.
 */
class WeightedGraph {
 public:
  /// Validating factory. Accepts endpoint pairs in either order, normalizes
  /// to tail > head. Throws invalid_input on self-loops, duplicate pairs,
  /// nonpositive weights, out-of-range indices, or a disconnected result.
  /// Single-node graphs are rejected (their normalization Z_i is undefined).
  static WeightedGraph build(int node_count,
                             const std::vector<std::tuple<int, int, double>>& edges);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }

  /// Weighted degree Z_i = Σ_{j ~ i} κ_ij.
  double z(int i) const { return z_[static_cast<size_t>(i)]; }
  const std::vector<double>& z() const { return z_; }

  /// Neighbors of i as (neighbor, edge index), in edge insertion order.
  const std::vector<std::pair<int, int>>& neighbors(int i) const {
    return adj_[static_cast<size_t>(i)];
  }

  /// Index of the edge joining i and j, or -1 if they are not adjacent.
  int edge_between(int i, int j) const;
  bool adjacent(int i, int j) const { return edge_between(i, j) >= 0; }

 private:
  WeightedGraph() = default;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<double> z_;
};

/// Convenience wrapper applying the metric weight rule κ_ij = length⁻² to a
/// list of embedded edge lengths.
WeightedGraph weights_from_embedding(int node_count,
                                     const std::vector<std::pair<int, int>>& edges,
                                     const std::vector<double>& lengths);

/**
 * BFS spanning tree. The traversal starts at `root` and scans neighbors in
 * edge insertion order, so the tree (and everything derived from it:
 * fundamental cycles, tree gauges, blow-ups) is deterministic.
 */
struct SpanningTree {
  int root = 0;
  std::vector<int> parent;       ///< parent node per node; -1 at the root
  std::vector<int> parent_edge;  ///< edge index to the parent; -1 at the root
  std::vector<int> bfs_order;    ///< nodes in discovery order (root first)
  std::vector<char> in_tree;     ///< per-edge flag
  std::vector<int> tree_edges;   ///< edge indices, insertion order
  std::vector<int> cotree_edges; ///< ε₁: edge indices not in the tree
};

SpanningTree spanning_tree(const WeightedGraph& g, int root = 0);

/// All 3-cliques (i, j, k) with i < j < k, in lexicographic order.
std::vector<std::array<int, 3>> triangles(const WeightedGraph& g);

/// Unique path root → node along tree edges, returned root-first.
std::vector<int> tree_path_from_root(const SpanningTree& t, int node);

/// The simple cycle obtained from a cotree edge plus the tree path between
/// its endpoints: starts at the edge's tail, runs through the tree to the
/// head, and closes over the cotree edge (first vertex repeated at the end).
std::vector<int> fundamental_cycle(const WeightedGraph& g, const SpanningTree& t,
                                   int cotree_edge);

/**
 * Tree blow-up: keep the spanning tree (vertices ĩ = i), and for every
 * cotree edge i > j attach a fresh leaf I to j̃ with the cotree edge's
 * weight, oriented I > j̃. The vertex projection π sends ĩ ↦ i and I ↦ i;
 * edges of the blow-up correspond bijectively to edges of the host graph and
 * inherit κ̃_{IJ} = κ_{π(I)π(J)}.
 */
struct BlowUpTree {
  WeightedGraph tree;              ///< η̃, a tree on N + |ε₁| vertices
  std::vector<int> pi;             ///< π : ν̃ → ν
  std::vector<int> edge_to_orig;   ///< ε̃ index → ε index (bijection)
  std::vector<int> orig_to_edge;   ///< inverse of edge_to_orig
};

BlowUpTree blow_up(const WeightedGraph& g, const SpanningTree& t);

}  // namespace gaugekit
