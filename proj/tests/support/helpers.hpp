#pragma once

// Shared construction helpers for tests: closed-form rotations, random
// instances, and small independent oracles that double-check library results
// through a different code path.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

#include "gaugekit/rotation.hpp"

namespace testkit {

/// 2D rotation by theta (counter-clockwise).
inline Eigen::MatrixXd rot2(double theta) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

/// 3D rotation about a (not necessarily unit) axis via the Rodrigues formula.
inline Eigen::MatrixXd rot3(const Eigen::Vector3d& axis, double theta) {
  const Eigen::Vector3d u = axis.normalized();
  Eigen::Matrix3d k;
  k << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
  return Eigen::Matrix3d::Identity() + std::sin(theta) * k +
         (1.0 - std::cos(theta)) * (k * k);
}

/// Gaussian N×d matrix from a seeded engine.
inline Eigen::MatrixXd gaussian_matrix(int n, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = g(rng);
  return m;
}

/// Random connected edge list: random attachment tree plus extra chords.
/// Oracle-side twin of the library generator (kept independent on purpose).
inline std::vector<std::tuple<int, int, double>> random_edges(int n, int extra,
                                                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> wgt(0.5, 2.0);
  std::vector<std::tuple<int, int, double>> edges;
  for (int i = 1; i < n; ++i) {
    edges.emplace_back(i, static_cast<int>(rng() % static_cast<std::uint64_t>(i)), wgt(rng));
  }
  auto has = [&](int a, int b) {
    for (const auto& [x, y, w] : edges)
      if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
  };
  const int max_extra = n * (n - 1) / 2 - (n - 1);
  extra = std::min(extra, max_extra);
  int guard = 0;
  while (extra > 0 && guard++ < 100000) {
    const int a = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const int b = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    if (a == b || has(a, b)) continue;
    edges.emplace_back(a, b, wgt(rng));
    --extra;
  }
  return edges;
}

/// Planar m×m grid (no wraparound), unit weights, insertion order
/// row-major: right edge then down edge per cell corner.
inline std::vector<std::tuple<int, int, double>> grid_edges(int m) {
  std::vector<std::tuple<int, int, double>> edges;
  auto idx = [m](int r, int c) { return r * m + c; };
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      if (c + 1 < m) edges.emplace_back(idx(r, c), idx(r, c + 1), 1.0);
      if (r + 1 < m) edges.emplace_back(idx(r, c), idx(r + 1, c), 1.0);
    }
  }
  return edges;
}

}  // namespace testkit
