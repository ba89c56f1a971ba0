#include "gaugekit/voltage.hpp"

#include <string>
#include <unordered_set>
#include <utility>

#include "gaugekit/errors.hpp"

namespace gaugekit {

namespace {

void check_same_shape(const Gauge& xi, int node_count, int dim) {
  if (xi.node_count() != node_count || xi.dim() != dim) {
    throw invalid_input(
        "dimension mismatch: gauge has " + std::to_string(xi.node_count()) +
        " nodes of dimension " + std::to_string(xi.dim()) + ", expected " +
        std::to_string(node_count) + " of dimension " + std::to_string(dim));
  }
}

void check_distinct(const std::vector<int>& vertices, const char* what) {
  std::unordered_set<int> seen;
  seen.reserve(vertices.size());
  for (int v : vertices) {
    if (!seen.insert(v).second) {
      throw invalid_input(std::string(what) + ": vertex " + std::to_string(v) +
                          " repeats");
    }
  }
}

// Ordered product alpha_{i_m,i_{m-1}} ... alpha_{i_1,i_0} over a validated
// vertex sequence, re-projected every kReprojectEvery factors so that long
// walks do not drift off the group.
Eigen::MatrixXd product_along(const VoltageGraph& vg,
                              const std::vector<int>& seq) {
  const int d = vg.dim();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(d, d);
  int since_projection = 0;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    acc = vg.rotation_between(seq[k], seq[k - 1]) * acc;
    if (++since_projection == kReprojectEvery) {
      acc = project_to_rotation(acc).matrix();
      since_projection = 0;
    }
  }
  return acc;
}

}  // namespace

Gauge Gauge::identity(int node_count, int dim) {
  if (node_count < 1) throw invalid_input("gauge needs at least one node");
  if (dim < 1) throw invalid_input("gauge dimension must be positive");
  std::vector<Eigen::MatrixXd> xi(static_cast<std::size_t>(node_count),
                                  Eigen::MatrixXd::Identity(dim, dim));
  return Gauge(dim, std::move(xi));
}

Gauge Gauge::from_rotations(std::vector<Eigen::MatrixXd> xi, double tol) {
  if (xi.empty()) throw invalid_input("gauge needs at least one node");
  const int d = static_cast<int>(xi.front().rows());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i].rows() != d || xi[i].cols() != d) {
      throw invalid_input("gauge entry " + std::to_string(i) +
                          " has inconsistent dimensions");
    }
    if (!validate_rotation(xi[i], tol)) {
      throw invalid_input("gauge entry " + std::to_string(i) +
                          " is not a rotation at tolerance " +
                          std::to_string(tol));
    }
  }
  return Gauge(d, std::move(xi));
}

const Eigen::MatrixXd& Gauge::at(int i) const {
  if (i < 0 || i >= node_count()) {
    throw invalid_input("gauge index " + std::to_string(i) + " out of range");
  }
  return xi_[static_cast<std::size_t>(i)];
}

Gauge Gauge::inverse() const {
  std::vector<Eigen::MatrixXd> inv(xi_.size());
  for (std::size_t i = 0; i < xi_.size(); ++i) inv[i] = xi_[i].transpose();
  return Gauge(dim_, std::move(inv));
}

VoltageGraph VoltageGraph::build(WeightedGraph g, int dim,
                                 std::vector<Eigen::MatrixXd> alphas,
                                 double tol) {
  if (dim < 1) throw invalid_input("voltage dimension must be positive");
  if (static_cast<int>(alphas.size()) != g.edge_count()) {
    throw invalid_input("voltage has " + std::to_string(alphas.size()) +
                        " rotations for " + std::to_string(g.edge_count()) +
                        " edges");
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    const Eigen::MatrixXd& a = alphas[static_cast<std::size_t>(e)];
    const Edge& edge = g.edge(e);
    const std::string where = "edge " + std::to_string(e) + " (" +
                              std::to_string(edge.tail) + "-" +
                              std::to_string(edge.head) + ")";
    if (a.rows() != dim || a.cols() != dim) {
      throw invalid_input(where + ": rotation is " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()) + ", expected " +
                          std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (!validate_rotation(a, tol)) {
      throw invalid_input(where + ": matrix is not a rotation at tolerance " +
                          std::to_string(tol));
    }
  }
  return VoltageGraph(std::move(g), dim, std::move(alphas));
}

VoltageGraph VoltageGraph::trivial(WeightedGraph g, int dim) {
  if (dim < 1) throw invalid_input("voltage dimension must be positive");
  std::vector<Eigen::MatrixXd> alphas(
      static_cast<std::size_t>(g.edge_count()),
      Eigen::MatrixXd::Identity(dim, dim));
  return VoltageGraph(std::move(g), dim, std::move(alphas));
}

const Eigen::MatrixXd& VoltageGraph::edge_rotation(int e) const {
  if (e < 0 || e >= edge_count()) {
    throw invalid_input("edge index " + std::to_string(e) + " out of range");
  }
  return alpha_[static_cast<std::size_t>(e)];
}

Eigen::MatrixXd VoltageGraph::rotation_between(int i, int j) const {
  const int e = graph_.edge_between(i, j);
  if (e < 0) {
    throw invalid_input("nodes " + std::to_string(i) + " and " +
                        std::to_string(j) + " are not adjacent");
  }
  const Eigen::MatrixXd& stored = alpha_[static_cast<std::size_t>(e)];
  return graph_.edge(e).tail == i ? stored
                                  : Eigen::MatrixXd(stored.transpose());
}

Gauge compose(const Gauge& xi, const Gauge& zeta) {
  check_same_shape(zeta, xi.node_count(), xi.dim());
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(xi.node_count()));
  for (int i = 0; i < xi.node_count(); ++i) {
    out[static_cast<std::size_t>(i)] =
        project_to_rotation(xi.at(i) * zeta.at(i)).matrix();
  }
  return Gauge::from_rotations(std::move(out));
}

VoltageGraph gauge_act_voltage(const Gauge& xi, const VoltageGraph& vg) {
  check_same_shape(xi, vg.node_count(), vg.dim());
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(vg.edge_count()));
  for (int e = 0; e < vg.edge_count(); ++e) {
    const Edge& edge = vg.graph().edge(e);
    out[static_cast<std::size_t>(e)] =
        project_to_rotation(xi.at(edge.tail) * vg.edge_rotation(e) *
                            xi.at(edge.head).transpose())
            .matrix();
  }
  return VoltageGraph::build(vg.graph(), vg.dim(), std::move(out));
}

Section gauge_act_section(const Gauge& xi, const Section& x) {
  if (x.rows() != xi.node_count() || x.cols() != xi.dim()) {
    throw invalid_input(
        "dimension mismatch: section is " + std::to_string(x.rows()) + "x" +
        std::to_string(x.cols()) + ", gauge expects " +
        std::to_string(xi.node_count()) + "x" + std::to_string(xi.dim()));
  }
  Section out(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i) {
    out.row(i) = x.row(i) * xi.at(i).transpose();
  }
  return out;
}

Eigen::MatrixXd net_voltage(const VoltageGraph& vg,
                            const std::vector<int>& path) {
  if (path.empty()) throw invalid_input("path error: empty vertex sequence");
  for (int v : path) {
    if (v < 0 || v >= vg.node_count()) {
      throw invalid_input("path error: vertex " + std::to_string(v) +
                          " out of range");
    }
  }
  check_distinct(path, "path error");
  return product_along(vg, path);
}

Eigen::MatrixXd holonomy(const VoltageGraph& vg, const std::vector<int>& loop) {
  if (loop.empty()) throw invalid_input("loop error: empty vertex sequence");
  if (loop.front() != loop.back()) {
    throw invalid_input("loop error: sequence starts at " +
                        std::to_string(loop.front()) + " but ends at " +
                        std::to_string(loop.back()));
  }
  for (int v : loop) {
    if (v < 0 || v >= vg.node_count()) {
      throw invalid_input("loop error: vertex " + std::to_string(v) +
                          " out of range");
    }
  }
  std::vector<int> interior(loop.begin(), loop.end() - 1);
  check_distinct(interior, "loop error");
  return product_along(vg, loop);
}

double scalar_holonomy(const Eigen::MatrixXd& hol) {
  const double value =
      2.0 * (static_cast<double>(hol.rows()) - hol.trace());
  return value < 0.0 ? 0.0 : value;
}

double scalar_holonomy(const VoltageGraph& vg, const std::vector<int>& loop) {
  return scalar_holonomy(holonomy(vg, loop));
}

TreeGauge tree_gauge(const VoltageGraph& vg, const SpanningTree& t) {
  const int n = vg.node_count();
  const int d = vg.dim();
  std::vector<Eigen::MatrixXd> xi(static_cast<std::size_t>(n));
  xi[static_cast<std::size_t>(t.root)] = Eigen::MatrixXd::Identity(d, d);
  for (int v : t.bfs_order) {
    if (v == t.root) continue;
    const int p = t.parent[static_cast<std::size_t>(v)];
    // xi_child = xi_parent * alpha_{parent,child} collapses the conjugated
    // rotation on the tree edge to the identity; projecting the product
    // keeps accumulated round-off away from the validation threshold.
    xi[static_cast<std::size_t>(v)] =
        project_to_rotation(xi[static_cast<std::size_t>(p)] *
                            vg.rotation_between(p, v))
            .matrix();
  }
  Gauge gauge = Gauge::from_rotations(std::move(xi));
  VoltageGraph gauged = gauge_act_voltage(gauge, vg);
  return TreeGauge{std::move(gauge), std::move(gauged)};
}

std::optional<Gauge> synchronize(const VoltageGraph& vg, const SpanningTree& t,
                                 double tol_sync) {
  if (!(tol_sync > 0.0)) throw invalid_input("tol_sync must be positive");
  TreeGauge tg = tree_gauge(vg, t);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(vg.dim(), vg.dim());
  for (int e : t.cotree_edges) {
    const double defect =
        (tg.gauged.edge_rotation(e) - id).cwiseAbs().maxCoeff();
    if (defect > tol_sync) return std::nullopt;
  }
  return std::move(tg.xi);
}

}  // namespace gaugekit
