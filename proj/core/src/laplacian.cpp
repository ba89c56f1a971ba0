#include "gaugekit/laplacian.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "gaugekit/errors.hpp"

namespace gaugekit {

namespace {

void check_shape(const Section& x, int rows, int cols, const char* what) {
  if (x.rows() != rows || x.cols() != cols) {
    std::ostringstream msg;
    msg << "section shape mismatch: " << what << " is " << x.rows() << "x"
        << x.cols() << ", expected " << rows << "x" << cols;
    throw invalid_input(msg.str());
  }
}

void check_dense_cap(const GaugedLaplacian& L, const char* what) {
  if (L.total_dim() > kDenseCap) {
    std::ostringstream msg;
    msg << what << " needs the dense backend, but node_count * dim = "
        << L.total_dim() << " exceeds the cap " << kDenseCap;
    throw invalid_input(msg.str());
  }
}

// Symmetrized Nd x Nd form B = S L S^{-1} with S = diag(sqrt(Z_i)) kron I_d:
// identity diagonal blocks and -(k_ab / sqrt(Z_a Z_b)) alpha_ab off-diagonal
// blocks.  B shares the spectrum of L and maps back by scaling row blocks.
Eigen::MatrixXd symmetrized_dense(const GaugedLaplacian& L) {
  const WeightedGraph& g = L.graph();
  const int d = L.dim();
  const Eigen::Index nd = static_cast<Eigen::Index>(L.total_dim());
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(nd, nd);
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const double coef = -ed.weight / std::sqrt(g.z(ed.tail) * g.z(ed.head));
    const Eigen::MatrixXd& r = L.voltage_graph().edge_rotation(e);
    b.block(ed.tail * d, ed.head * d, d, d) = coef * r;
    b.block(ed.head * d, ed.tail * d, d, d) = coef * r.transpose();
  }
  return 0.5 * (b + b.transpose());
}

// Turns the flat coordinate vector v (node-major layout, v[i*d + k]) back
// into a section, undoing the S-conjugation row block by row block.
Section unscale_to_section(const WeightedGraph& g, int d,
                           const Eigen::VectorXd& v) {
  Section s(g.node_count(), d);
  for (int i = 0; i < g.node_count(); ++i) {
    s.row(i) = v.segment(i * d, d).transpose() / std::sqrt(g.z(i));
  }
  return s;
}

}  // namespace

GaugedLaplacian::GaugedLaplacian(VoltageGraph vg)
    : vg_(std::move(vg)), z_(vg_.graph().z()) {}

Section GaugedLaplacian::apply(const Section& x) const {
  check_shape(x, node_count(), dim(), "input");
  const WeightedGraph& g = graph();
  Section out = x;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const Eigen::MatrixXd& r = vg_.edge_rotation(e);
    // alpha_{tail,head} x_head in row form is x.row(head) * r^T; the reverse
    // direction uses the transpose rotation, i.e. x.row(tail) * r.
    out.row(ed.tail) -=
        (ed.weight / z_[static_cast<size_t>(ed.tail)]) * (x.row(ed.head) * r.transpose());
    out.row(ed.head) -=
        (ed.weight / z_[static_cast<size_t>(ed.head)]) * (x.row(ed.tail) * r);
  }
  return out;
}

const Spectrum& GaugedLaplacian::spectrum() const {
  std::call_once(spectrum_once_, [this] {
    check_dense_cap(*this, "spectrum");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized_dense(*this));
    if (es.info() != Eigen::Success) {
      throw numeric_error("eigendecomposition of the gauged Laplacian failed");
    }
    auto sp = std::make_unique<Spectrum>();
    sp->eigenvalues = es.eigenvalues();
    sp->eigensections.reserve(static_cast<size_t>(sp->eigenvalues.size()));
    for (Eigen::Index rk = 0; rk < sp->eigenvalues.size(); ++rk) {
      sp->eigensections.push_back(
          unscale_to_section(graph(), dim(), es.eigenvectors().col(rk)));
    }
    spectrum_ = std::move(sp);
  });
  return *spectrum_;
}

const Nullspace& GaugedLaplacian::kernel() const {
  std::call_once(kernel_once_, [this] {
    kernel_ = std::make_unique<Nullspace>(
        nullspace_spanning_tree(*this, spanning_tree(graph(), 0)));
  });
  return *kernel_;
}

Section apply_laplacian(const GaugedLaplacian& L, const Section& x) {
  return L.apply(x);
}

double inner_product_z(const WeightedGraph& g, const Section& x,
                       const Section& y) {
  if (x.rows() != g.node_count() || y.rows() != g.node_count() ||
      x.cols() != y.cols()) {
    throw invalid_input(
        "inner_product_z: sections must match the graph's node count and "
        "share one feature dimension");
  }
  double acc = 0.0;
  for (int i = 0; i < g.node_count(); ++i) {
    acc += g.z(i) * x.row(i).dot(y.row(i));
  }
  return acc;
}

double z_norm(const WeightedGraph& g, const Section& x) {
  return std::sqrt(std::max(0.0, inner_product_z(g, x, x)));
}

double dirichlet_energy(const GaugedLaplacian& L, const Section& x) {
  check_shape(x, L.node_count(), L.dim(), "input");
  const WeightedGraph& g = L.graph();
  double acc = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const Eigen::MatrixXd& r = L.voltage_graph().edge_rotation(e);
    // The ordered pairs (tail, head) and (head, tail) contribute identical
    // halves because the rotation is orthogonal, so each undirected edge
    // enters once at full weight.
    acc += ed.weight *
           (x.row(ed.head) * r.transpose() - x.row(ed.tail)).squaredNorm();
  }
  return acc;
}

Eigen::MatrixXd assemble_dense(const GaugedLaplacian& L) {
  check_dense_cap(L, "assemble_dense");
  const WeightedGraph& g = L.graph();
  const int d = L.dim();
  const Eigen::Index nd = static_cast<Eigen::Index>(L.total_dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(nd, nd);
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const Eigen::MatrixXd& r = L.voltage_graph().edge_rotation(e);
    m.block(ed.tail * d, ed.head * d, d, d) = -(ed.weight / g.z(ed.tail)) * r;
    m.block(ed.head * d, ed.tail * d, d, d) =
        -(ed.weight / g.z(ed.head)) * r.transpose();
  }
  return m;
}

const Spectrum& spectrum(const GaugedLaplacian& L) { return L.spectrum(); }

double smallest_nonzero_eigenvalue(const Spectrum& s, double tol) {
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues(i) > tol) {
      return s.eigenvalues(i);
    }
  }
  throw numeric_error(
      "smallest_nonzero_eigenvalue: every eigenvalue is below the tolerance");
}

Nullspace nullspace_spanning_tree(const GaugedLaplacian& L,
                                  const SpanningTree& t) {
  const VoltageGraph& vg = L.voltage_graph();
  const int d = vg.dim();
  const int n = vg.node_count();
  const TreeGauge tg = tree_gauge(vg, t);

  // In the tree gauge the kernel equation collapses to: x is constant along
  // the tree with common value x0, and every cotree rotation fixes x0.  The
  // fixed space is the common nullspace of the stacked (alpha' - I) blocks.
  Eigen::MatrixXd common;
  if (t.cotree_edges.empty()) {
    common = Eigen::MatrixXd::Identity(d, d);
  } else {
    Eigen::MatrixXd stacked(
        static_cast<Eigen::Index>(t.cotree_edges.size()) * d, d);
    for (size_t idx = 0; idx < t.cotree_edges.size(); ++idx) {
      stacked.middleRows(static_cast<Eigen::Index>(idx) * d, d) =
          tg.gauged.edge_rotation(t.cotree_edges[idx]) -
          Eigen::MatrixXd::Identity(d, d);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    int zero_count = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) <= kTolEig) {
        ++zero_count;
      }
    }
    common = svd.matrixV().rightCols(zero_count);
  }

  const double total_z =
      std::accumulate(L.graph().z().begin(), L.graph().z().end(), 0.0);
  const double scale = 1.0 / std::sqrt(total_z);

  Nullspace ns;
  ns.dimension = static_cast<int>(common.cols());
  ns.basis.reserve(static_cast<size_t>(ns.dimension));
  for (Eigen::Index rk = 0; rk < common.cols(); ++rk) {
    Section s(n, d);
    for (int i = 0; i < n; ++i) {
      // x_i = xi_i^T x0 expressed on rows; the tree gauge transports the
      // common vector out to every node.  Orthonormal x0 columns come out
      // Z-orthonormal after the global rescale.
      s.row(i) = common.col(rk).transpose() * tg.xi.at(i) * scale;
    }
    ns.basis.push_back(std::move(s));
  }
  return ns;
}

Nullspace nullspace_dense(const GaugedLaplacian& L) {
  check_dense_cap(L, "nullspace_dense");
  const Eigen::MatrixXd b = symmetrized_dense(L);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double thresh = 1e-8 * sv(0);
  int zero_count = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= thresh) {
      ++zero_count;
    }
  }
  Nullspace ns;
  ns.dimension = zero_count;
  ns.basis.reserve(static_cast<size_t>(zero_count));
  for (Eigen::Index c = sv.size() - zero_count; c < sv.size(); ++c) {
    ns.basis.push_back(
        unscale_to_section(L.graph(), L.dim(), svd.matrixV().col(c)));
  }
  return ns;
}

Section project_to_kernel(const GaugedLaplacian& L, const Section& x) {
  check_shape(x, L.node_count(), L.dim(), "input");
  Section out = Section::Zero(L.node_count(), L.dim());
  for (const Section& b : L.kernel().basis) {
    out += inner_product_z(L.graph(), b, x) * b;
  }
  return out;
}

namespace {

void check_blowup(const WeightedGraph& host, const BlowUpTree& b) {
  const WeightedGraph& tr = b.tree;
  if (static_cast<int>(b.pi.size()) != tr.node_count() ||
      static_cast<int>(b.edge_to_orig.size()) != tr.edge_count() ||
      static_cast<int>(b.orig_to_edge.size()) != host.edge_count() ||
      tr.edge_count() != host.edge_count()) {
    throw invalid_input(
        "blow-up structure error: index tables do not match the host graph");
  }
  for (int v = 0; v < tr.node_count(); ++v) {
    if (b.pi[static_cast<size_t>(v)] < 0 ||
        b.pi[static_cast<size_t>(v)] >= host.node_count()) {
      throw invalid_input(
          "blow-up structure error: vertex projection out of range");
    }
  }
  for (int e = 0; e < tr.edge_count(); ++e) {
    const int orig = b.edge_to_orig[static_cast<size_t>(e)];
    if (orig < 0 || orig >= host.edge_count() ||
        b.orig_to_edge[static_cast<size_t>(orig)] != e) {
      throw invalid_input(
          "blow-up structure error: edge tables are not inverse bijections");
    }
    const Edge& blown = tr.edge(e);
    const Edge& orig_e = host.edge(orig);
    if (b.pi[static_cast<size_t>(blown.tail)] != orig_e.tail ||
        b.pi[static_cast<size_t>(blown.head)] != orig_e.head ||
        blown.weight != orig_e.weight) {
      throw invalid_input(
          "blow-up structure error: edge endpoints or weights do not project "
          "onto the host edge");
    }
  }
}

}  // namespace

VoltageGraph lift_voltage(const VoltageGraph& vg, const BlowUpTree& b) {
  check_blowup(vg.graph(), b);
  std::vector<Eigen::MatrixXd> alphas;
  alphas.reserve(static_cast<size_t>(b.tree.edge_count()));
  for (int e = 0; e < b.tree.edge_count(); ++e) {
    // Both the blown edge and its original are oriented so that the tail
    // projects to the original tail, hence the stored matrix carries over.
    alphas.push_back(vg.edge_rotation(b.edge_to_orig[static_cast<size_t>(e)]));
  }
  return VoltageGraph::build(b.tree, vg.dim(), std::move(alphas));
}

Section blowup_lift_apply(const GaugedLaplacian& L, const BlowUpTree& b,
                          const VoltageGraph& lifted, const Section& x0) {
  check_blowup(L.graph(), b);
  check_shape(x0, L.node_count(), L.dim(), "input");
  if (lifted.node_count() != b.tree.node_count() ||
      lifted.edge_count() != b.tree.edge_count() || lifted.dim() != L.dim()) {
    throw invalid_input(
        "blow-up structure error: the lifted voltage does not live on the "
        "blow-up tree");
  }

  const int nt = lifted.node_count();
  const int d = lifted.dim();

  // A tree voltage always synchronizes: the tree gauge makes every lifted
  // rotation trivial, turning the gauged diffusion into a plain one.
  const TreeGauge tg = tree_gauge(lifted, spanning_tree(lifted.graph(), 0));

  Section xt(nt, d);
  for (int v = 0; v < nt; ++v) {
    xt.row(v) = x0.row(b.pi[static_cast<size_t>(v)]);
  }
  const Section w = gauge_act_section(tg.xi, xt);

  // Plain (rotation-free) Laplacian sum on the blow-up, except that every
  // node normalizes by the weighted degree of its host image: fresh leaves
  // see only a fraction of the host star, the fiber sum below restores it.
  Section acc = Section::Zero(nt, d);
  const WeightedGraph& tr = b.tree;
  for (int e = 0; e < tr.edge_count(); ++e) {
    const Edge& ed = tr.edge(e);
    const Eigen::RowVectorXd diff = w.row(ed.head) - w.row(ed.tail);
    acc.row(ed.tail) -=
        (ed.weight / L.graph().z(b.pi[static_cast<size_t>(ed.tail)])) * diff;
    acc.row(ed.head) +=
        (ed.weight / L.graph().z(b.pi[static_cast<size_t>(ed.head)])) * diff;
  }

  const Section u = gauge_act_section(tg.xi.inverse(), acc);
  Section y = Section::Zero(L.node_count(), d);
  for (int v = 0; v < nt; ++v) {
    y.row(b.pi[static_cast<size_t>(v)]) += u.row(v);
  }
  return y;
}

bool blowup_lift_check(const GaugedLaplacian& L, const BlowUpTree& b,
                       const Section& x0, double tol) {
  return blowup_lift_check(L, b, lift_voltage(L.voltage_graph(), b), x0, tol);
}

bool blowup_lift_check(const GaugedLaplacian& L, const BlowUpTree& b,
                       const VoltageGraph& lifted, const Section& x0,
                       double tol) {
  if (!(tol > 0.0)) {
    throw invalid_input("blowup_lift_check: tolerance must be positive");
  }
  const Section y = blowup_lift_apply(L, b, lifted, x0);
  return (y - L.apply(x0)).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace gaugekit
