#include "gaugekit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_set>

#include "gaugekit/errors.hpp"

namespace gaugekit {

namespace {
// Unordered pair key for duplicate detection; node counts are far below 2^31.
inline std::uint64_t pair_key(int a, int b) {
  if (a < b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}
}  // namespace

WeightedGraph WeightedGraph::build(int node_count,
                                   const std::vector<std::tuple<int, int, double>>& edges) {
  if (node_count < 2) {
    throw invalid_input("graph must have at least 2 nodes (got " +
                        std::to_string(node_count) + "); normalization is undefined otherwise");
  }
  WeightedGraph g;
  g.n_ = node_count;
  g.adj_.resize(static_cast<size_t>(node_count));
  g.z_.assign(static_cast<size_t>(node_count), 0.0);
  g.edges_.reserve(edges.size());

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (size_t e = 0; e < edges.size(); ++e) {
    auto [i, j, w] = edges[e];
    if (i < 0 || i >= node_count || j < 0 || j >= node_count) {
      throw invalid_input("edge " + std::to_string(e) + " references node out of range");
    }
    if (i == j) {
      throw invalid_input("structure error: self-loop at node " + std::to_string(i) +
                          " (edge " + std::to_string(e) + ")");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw invalid_input("weight error: edge " + std::to_string(e) +
                          " must have a strictly positive finite weight");
    }
    if (!seen.insert(pair_key(i, j)).second) {
      throw invalid_input("structure error: duplicate unordered pair {" + std::to_string(i) +
                          "," + std::to_string(j) + "} (edge " + std::to_string(e) + ")");
    }
    const int tail = std::max(i, j);
    const int head = std::min(i, j);
    const int idx = static_cast<int>(g.edges_.size());
    g.edges_.push_back(Edge{tail, head, w});
    g.adj_[static_cast<size_t>(tail)].emplace_back(head, idx);
    g.adj_[static_cast<size_t>(head)].emplace_back(tail, idx);
    g.z_[static_cast<size_t>(tail)] += w;
    g.z_[static_cast<size_t>(head)] += w;
  }

  // Connectivity by BFS from node 0.
  std::vector<char> visited(static_cast<size_t>(node_count), 0);
  std::deque<int> queue{0};
  visited[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& [v, e] : g.adj_[static_cast<size_t>(u)]) {
      if (!visited[static_cast<size_t>(v)]) {
        visited[static_cast<size_t>(v)] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  if (reached != node_count) {
    throw invalid_input("connectivity error: graph has more than one component (" +
                        std::to_string(reached) + " of " + std::to_string(node_count) +
                        " nodes reachable from node 0)");
  }
  return g;
}

int WeightedGraph::edge_between(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) return -1;
  const auto& a = adj_[static_cast<size_t>(i)];
  const auto& b = adj_[static_cast<size_t>(j)];
  // Scan the shorter list.
  const auto& shorter = a.size() <= b.size() ? a : b;
  const int target = a.size() <= b.size() ? j : i;
  for (const auto& [v, e] : shorter)
    if (v == target) return e;
  return -1;
}

WeightedGraph weights_from_embedding(int node_count,
                                     const std::vector<std::pair<int, int>>& edges,
                                     const std::vector<double>& lengths) {
  if (edges.size() != lengths.size()) {
    throw invalid_input("weights_from_embedding: need one length per edge");
  }
  std::vector<std::tuple<int, int, double>> weighted;
  weighted.reserve(edges.size());
  for (size_t e = 0; e < edges.size(); ++e) {
    const double len = lengths[e];
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw invalid_input("weight error: edge " + std::to_string(e) +
                          " has nonpositive embedded length");
    }
    weighted.emplace_back(edges[e].first, edges[e].second, 1.0 / (len * len));
  }
  return WeightedGraph::build(node_count, weighted);
}

SpanningTree spanning_tree(const WeightedGraph& g, int root) {
  const int n = g.node_count();
  if (root < 0 || root >= n) throw invalid_input("spanning tree root out of range");

  SpanningTree t;
  t.root = root;
  t.parent.assign(static_cast<size_t>(n), -1);
  t.parent_edge.assign(static_cast<size_t>(n), -1);
  t.in_tree.assign(static_cast<size_t>(g.edge_count()), 0);
  t.bfs_order.reserve(static_cast<size_t>(n));

  std::vector<char> visited(static_cast<size_t>(n), 0);
  std::deque<int> queue{root};
  visited[static_cast<size_t>(root)] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    t.bfs_order.push_back(u);
    for (const auto& [v, e] : g.neighbors(u)) {
      if (!visited[static_cast<size_t>(v)]) {
        visited[static_cast<size_t>(v)] = 1;
        t.parent[static_cast<size_t>(v)] = u;
        t.parent_edge[static_cast<size_t>(v)] = e;
        t.in_tree[static_cast<size_t>(e)] = 1;
        queue.push_back(v);
      }
    }
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    (t.in_tree[static_cast<size_t>(e)] ? t.tree_edges : t.cotree_edges).push_back(e);
  }
  return t;
}

std::vector<std::array<int, 3>> triangles(const WeightedGraph& g) {
  const int n = g.node_count();
  // Sorted neighbor arrays once, then merge-intersect per edge.
  std::vector<std::vector<int>> nbr(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    nbr[static_cast<size_t>(i)].reserve(g.neighbors(i).size());
    for (const auto& [v, e] : g.neighbors(i)) nbr[static_cast<size_t>(i)].push_back(v);
    std::sort(nbr[static_cast<size_t>(i)].begin(), nbr[static_cast<size_t>(i)].end());
  }
  std::vector<std::array<int, 3>> tris;
  for (const Edge& edge : g.edges()) {
    const int lo = edge.head, hi = edge.tail;  // head < tail by construction
    const auto& a = nbr[static_cast<size_t>(lo)];
    const auto& b = nbr[static_cast<size_t>(hi)];
    // Common neighbors k > hi: each triangle is found exactly once, at its
    // lexicographically smallest edge.
    auto ia = std::upper_bound(a.begin(), a.end(), hi);
    auto ib = std::upper_bound(b.begin(), b.end(), hi);
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) ++ia;
      else if (*ib < *ia) ++ib;
      else {
        tris.push_back({lo, hi, *ia});
        ++ia;
        ++ib;
      }
    }
  }
  std::sort(tris.begin(), tris.end());
  return tris;
}

std::vector<int> tree_path_from_root(const SpanningTree& t, int node) {
  std::vector<int> path;
  for (int u = node; u != -1; u = t.parent[static_cast<size_t>(u)]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> fundamental_cycle(const WeightedGraph& g, const SpanningTree& t,
                                   int cotree_edge) {
  if (cotree_edge < 0 || cotree_edge >= g.edge_count() ||
      t.in_tree[static_cast<size_t>(cotree_edge)]) {
    throw invalid_input("fundamental_cycle: not a cotree edge index");
  }
  const Edge& e = g.edge(cotree_edge);
  const std::vector<int> pt = tree_path_from_root(t, e.tail);
  const std::vector<int> ph = tree_path_from_root(t, e.head);
  // Paths share a prefix from the root; the last common vertex is the LCA.
  size_t k = 0;
  while (k + 1 < pt.size() && k + 1 < ph.size() && pt[k + 1] == ph[k + 1]) ++k;
  std::vector<int> cycle;
  cycle.reserve((pt.size() - k) + (ph.size() - k) + 1);
  // tail up to the LCA, then down to head, then the cotree edge closes it.
  for (size_t i = pt.size(); i-- > k;) cycle.push_back(pt[i]);
  for (size_t i = k + 1; i < ph.size(); ++i) cycle.push_back(ph[i]);
  cycle.push_back(e.tail);
  return cycle;
}

BlowUpTree blow_up(const WeightedGraph& g, const SpanningTree& t) {
  const int n = g.node_count();
  std::vector<int> pi(static_cast<size_t>(n) + t.cotree_edges.size());
  std::vector<int> edge_to_orig(static_cast<size_t>(g.edge_count()), -1);
  std::vector<int> orig_to_edge(static_cast<size_t>(g.edge_count()), -1);

  std::vector<std::tuple<int, int, double>> edges;
  edges.reserve(static_cast<size_t>(g.edge_count()));
  for (int i = 0; i < n; ++i) pi[static_cast<size_t>(i)] = i;

  // Tree edges survive unchanged (ĩ = i keeps indices stable) ...
  for (int e : t.tree_edges) {
    const Edge& edge = g.edge(e);
    const int idx = static_cast<int>(edges.size());
    edges.emplace_back(edge.tail, edge.head, edge.weight);
    edge_to_orig[static_cast<size_t>(idx)] = e;
    orig_to_edge[static_cast<size_t>(e)] = idx;
  }
  // ... and each cotree edge i > j is rerouted to a fresh leaf I attached at
  // the head side j̃, with I projecting back to the tail i.
  int fresh = n;
  for (int e : t.cotree_edges) {
    const Edge& edge = g.edge(e);
    pi[static_cast<size_t>(fresh)] = edge.tail;
    const int idx = static_cast<int>(edges.size());
    edges.emplace_back(fresh, edge.head, edge.weight);  // fresh > head always
    edge_to_orig[static_cast<size_t>(idx)] = e;
    orig_to_edge[static_cast<size_t>(e)] = idx;
    ++fresh;
  }
  return BlowUpTree{WeightedGraph::build(fresh, edges), std::move(pi),
                    std::move(edge_to_orig), std::move(orig_to_edge)};
}

}  // namespace gaugekit
