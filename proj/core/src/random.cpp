#include "gaugekit/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gaugekit/errors.hpp"

namespace gaugekit {

namespace {

std::uint64_t pair_key(int i, int j) {
  const auto a = static_cast<std::uint64_t>(std::max(i, j));
  const auto b = static_cast<std::uint64_t>(std::min(i, j));
  return (a << 32) | b;
}

}  // namespace

WeightedGraph random_connected_graph(int nodes, double avg_degree,
                                     std::mt19937_64& rng) {
  if (nodes < 2) throw invalid_input("need at least two nodes");
  if (!(avg_degree > 0.0) || !std::isfinite(avg_degree)) {
    throw invalid_input("average degree must be positive and finite");
  }
  const long long max_edges =
      static_cast<long long>(nodes) * (nodes - 1) / 2;
  long long target =
      std::llround(avg_degree * static_cast<double>(nodes) / 2.0);
  target = std::clamp<long long>(target, nodes - 1, max_edges);

  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::vector<std::tuple<int, int, double>> edges;
  edges.reserve(static_cast<std::size_t>(target));
  std::unordered_set<std::uint64_t> used;
  used.reserve(static_cast<std::size_t>(target) * 2);

  // Random attachment tree guarantees connectivity ...
  for (int v = 1; v < nodes; ++v) {
    std::uniform_int_distribution<int> anchor(0, v - 1);
    const int u = anchor(rng);
    edges.emplace_back(u, v, weight(rng));
    used.insert(pair_key(u, v));
  }
  // ... then uniformly sampled chords until the edge budget is met.
  std::uniform_int_distribution<int> any(0, nodes - 1);
  while (static_cast<long long>(edges.size()) < target) {
    const int u = any(rng);
    const int v = any(rng);
    if (u == v || !used.insert(pair_key(u, v)).second) continue;
    edges.emplace_back(u, v, weight(rng));
  }
  return WeightedGraph::build(nodes, edges);
}

WeightedGraph random_connected_graph(int nodes, double avg_degree,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_connected_graph(nodes, avg_degree, rng);
}

VoltageGraph random_voltage(const WeightedGraph& g, int dim, VoltageMode mode,
                            std::mt19937_64& rng) {
  if (dim < 1) throw invalid_input("voltage dimension must be positive");
  const int m = g.edge_count();
  std::vector<Eigen::MatrixXd> alphas(static_cast<std::size_t>(m));
  switch (mode) {
    case VoltageMode::kTrivial: {
      std::fill(alphas.begin(), alphas.end(),
                Eigen::MatrixXd::Identity(dim, dim));
      break;
    }
    case VoltageMode::kHaar: {
      for (int e = 0; e < m; ++e) {
        alphas[static_cast<std::size_t>(e)] = sample_haar(dim, rng).matrix();
      }
      break;
    }
    case VoltageMode::kSynchronizable: {
      std::vector<Eigen::MatrixXd> xi(
          static_cast<std::size_t>(g.node_count()));
      for (auto& r : xi) r = sample_haar(dim, rng).matrix();
      for (int e = 0; e < m; ++e) {
        const Edge& edge = g.edge(e);
        alphas[static_cast<std::size_t>(e)] =
            xi[static_cast<std::size_t>(edge.tail)].transpose() *
            xi[static_cast<std::size_t>(edge.head)];
      }
      break;
    }
  }
  return VoltageGraph::build(g, dim, std::move(alphas));
}

VoltageGraph random_voltage(const WeightedGraph& g, int dim, VoltageMode mode,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_voltage(g, dim, mode, rng);
}

VoltageGraph random_voltage_graph(int nodes, double avg_degree, int dim,
                                  VoltageMode mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  WeightedGraph g = random_connected_graph(nodes, avg_degree, rng);
  return random_voltage(g, dim, mode, rng);
}

VoltageGraph torus_voltage_graph(int side, int order, bool diagonals) {
  if (side < 3) {
    throw invalid_input("torus side must be at least 3, got " +
                        std::to_string(side));
  }
  if (order < 1) {
    throw invalid_input("rotation order must be positive, got " +
                        std::to_string(order));
  }
  const int n = side;
  const double theta = 2.0 * std::numbers::pi / static_cast<double>(order);
  Eigen::Matrix2d alpha0;
  alpha0 << std::cos(theta), -std::sin(theta),  //
      std::sin(theta), std::cos(theta);
  const Eigen::Matrix2d alpha0_sq = alpha0 * alpha0;

  auto index = [n](int r, int c) {
    return n * ((r % n + n) % n) + ((c % n + n) % n);
  };

  std::vector<std::tuple<int, int, double>> edges;
  std::vector<Eigen::MatrixXd> alphas;
  const int per_node = diagonals ? 3 : 2;
  edges.reserve(static_cast<std::size_t>(per_node * n * n));
  alphas.reserve(edges.capacity());
  // `step` is the rotation attached to the ordered pair (v, u), i.e. the
  // transport picked up when moving from u to v; the stored orientation is
  // (max, min), so transpose when the index order disagrees.
  auto add = [&](int u, int v, const Eigen::Matrix2d& step) {
    edges.emplace_back(u, v, 1.0);
    alphas.emplace_back(v > u ? step : Eigen::Matrix2d(step.transpose()));
  };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int u = index(r, c);
      add(u, index(r, c + 1), alpha0);
      add(u, index(r + 1, c), alpha0);
      if (diagonals) add(u, index(r + 1, c + 1), alpha0_sq);
    }
  }
  return VoltageGraph::build(WeightedGraph::build(n * n, edges), 2,
                             std::move(alphas));
}

}  // namespace gaugekit
