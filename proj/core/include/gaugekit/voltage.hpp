#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gaugekit/graph.hpp"
#include "gaugekit/rotation.hpp"

namespace gaugekit {

// A section assigns a feature vector to every node; row i of the matrix is
// the vector sitting at node i, so the shape is node_count x dim.
using Section = Eigen::MatrixXd;

// Default max-norm threshold for declaring a cotree rotation trivial when
// testing synchronizability.
inline constexpr double kTolSync = 1e-8;

// One rotation per node.  Gauges act on voltages by conjugation and on
// sections row-wise; they are immutable once built.
class Gauge {
 public:
  static Gauge identity(int node_count, int dim);

  // Takes ownership of the rotations; every entry is validated at `tol`.
  static Gauge from_rotations(std::vector<Eigen::MatrixXd> xi,
                              double tol = kTolOrth);

  int node_count() const noexcept { return static_cast<int>(xi_.size()); }
  int dim() const noexcept { return dim_; }
  const Eigen::MatrixXd& at(int i) const;

  // Node-wise inverse (= transpose), itself a valid gauge.
  Gauge inverse() const;

 private:
  Gauge(int dim, std::vector<Eigen::MatrixXd> xi)
      : dim_(dim), xi_(std::move(xi)) {}

  int dim_ = 0;
  std::vector<Eigen::MatrixXd> xi_;
};

// A weighted graph together with a rotation on every edge.  The rotation
// stored for edge e belongs to the ordered pair (tail, head); the reverse
// direction is implicitly the transpose.  Immutable once built.
class VoltageGraph {
 public:
  // `alphas[e]` is the rotation of edge e in `g`, oriented tail -> head.
  // Every matrix must be dim x dim and pass validate_rotation at `tol`.
  static VoltageGraph build(WeightedGraph g, int dim,
                            std::vector<Eigen::MatrixXd> alphas,
                            double tol = kTolOrth);

  // The identity rotation on every edge.
  static VoltageGraph trivial(WeightedGraph g, int dim);

  const WeightedGraph& graph() const noexcept { return graph_; }
  int dim() const noexcept { return dim_; }
  int node_count() const noexcept { return graph_.node_count(); }
  int edge_count() const noexcept { return graph_.edge_count(); }

  // Rotation stored on edge e, i.e. the one attached to (tail, head).
  const Eigen::MatrixXd& edge_rotation(int e) const;

  // Rotation attached to the ordered pair (i, j); transposes the stored
  // matrix when (i, j) runs against the stored orientation.  Throws
  // invalid_input when i and j are not adjacent.
  Eigen::MatrixXd rotation_between(int i, int j) const;

 private:
  VoltageGraph(WeightedGraph g, int dim, std::vector<Eigen::MatrixXd> alphas)
      : graph_(std::move(g)), dim_(dim), alpha_(std::move(alphas)) {}

  WeightedGraph graph_;
  int dim_ = 0;
  std::vector<Eigen::MatrixXd> alpha_;
};

// Node-wise product (xi * zeta)_i = xi_i zeta_i.
Gauge compose(const Gauge& xi, const Gauge& zeta);

// Conjugated voltage (xi . alpha)_{ij} = xi_i alpha_{ij} xi_j^T on every
// edge, re-projected onto the rotation group.
VoltageGraph gauge_act_voltage(const Gauge& xi, const VoltageGraph& vg);

// Row-wise action: row i of the result is xi_i x_i.
Section gauge_act_section(const Gauge& xi, const Section& x);

// Net rotation transported along the path (i_0, ..., i_m), i.e. the product
// alpha_{i_m, i_{m-1}} ... alpha_{i_1, i_0} with the first step rightmost; a
// section consistent with the voltage satisfies x_{i_m} = net * x_{i_0}.
// Vertices must be pairwise distinct and consecutively adjacent.  Long
// products are periodically re-projected onto the rotation group.
Eigen::MatrixXd net_voltage(const VoltageGraph& vg,
                            const std::vector<int>& path);

// Rotation picked up around a closed loop (i_0, ..., i_m = i_0), with the
// same product convention as net_voltage.  The loop must be closed,
// consecutively adjacent, and have pairwise distinct interior vertices.
Eigen::MatrixXd holonomy(const VoltageGraph& vg, const std::vector<int>& loop);

// tr(2I - H - H^T) = 2 (dim - tr H) for a loop holonomy H.  The value lies
// in [0, 4 dim], vanishes exactly when H = I, and does not depend on the
// loop's base point or orientation.
double scalar_holonomy(const Eigen::MatrixXd& hol);
double scalar_holonomy(const VoltageGraph& vg, const std::vector<int>& loop);

// Gauge that trivializes every tree edge, together with the fully
// transformed voltage.  The gauge is I at the root and extends along tree
// edges so that the conjugated rotation on each tree edge collapses to the
// identity; equivalently alpha_{ij} = xi_i^T xi_j holds exactly on the tree.
struct TreeGauge {
  Gauge xi;
  VoltageGraph gauged;
};

TreeGauge tree_gauge(const VoltageGraph& vg, const SpanningTree& t);

// Decides synchronizability: computes the tree gauge and accepts iff every
// cotree rotation of the transformed voltage is within `tol_sync` of the
// identity in the max norm.  On success the returned gauge satisfies
// alpha_{ij} = xi_i^T xi_j on every edge to tol_sync.
std::optional<Gauge> synchronize(const VoltageGraph& vg,
                                 const SpanningTree& t,
                                 double tol_sync = kTolSync);

}  // namespace gaugekit
