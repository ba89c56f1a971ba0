#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "gaugekit/graph.hpp"
#include "gaugekit/voltage.hpp"

namespace gaugekit {

// Largest total dimension (node_count * dim) accepted by the dense backends
// (assembly, spectra, dense nullspace, spectral diffusion).
inline constexpr long long kDenseCap = 4096;

// Eigendecomposition of the gauged Laplacian in the Z-weighted geometry:
// ascending eigenvalues (reported raw; theory places them in [0, 2] up to
// roundoff) and eigensections that are orthonormal under the Z-weighted
// inner product.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  std::vector<Section> eigensections;
};

// Kernel description: a Z-orthonormal basis of sections.
struct Nullspace {
  int dimension = 0;
  std::vector<Section> basis;
};

// The normalized gauged Laplacian (Lx)_i = -sum_j (k_ij / Z_i)(alpha_ij x_j
// - x_i) of a voltage graph.  The operator is self-adjoint and positive
// semidefinite in the Z-weighted inner product and its spectrum lies in
// [0, 2].  Spectral and kernel factorizations are computed once on first
// use; the object is immutable afterwards and safe to share across threads
// (not copyable because of the single-initialization guards).
class GaugedLaplacian {
 public:
  explicit GaugedLaplacian(VoltageGraph vg);

  GaugedLaplacian(const GaugedLaplacian&) = delete;
  GaugedLaplacian& operator=(const GaugedLaplacian&) = delete;

  const VoltageGraph& voltage_graph() const noexcept { return vg_; }
  const WeightedGraph& graph() const noexcept { return vg_.graph(); }
  int dim() const noexcept { return vg_.dim(); }
  int node_count() const noexcept { return vg_.node_count(); }
  long long total_dim() const noexcept {
    return static_cast<long long>(node_count()) * dim();
  }

  // Matrix-free application, O(edge_count * dim^2).
  Section apply(const Section& x) const;

  // Dense symmetric eigendecomposition (lazily cached; dense cap enforced).
  const Spectrum& spectrum() const;

  // Kernel via the spanning-tree method rooted at node 0 (lazily cached).
  const Nullspace& kernel() const;

 private:
  VoltageGraph vg_;
  std::vector<double> z_;

  mutable std::once_flag spectrum_once_;
  mutable std::unique_ptr<Spectrum> spectrum_;
  mutable std::once_flag kernel_once_;
  mutable std::unique_ptr<Nullspace> kernel_;
};

// (Lx)_i = -sum_j (k_ij / Z_i)(alpha_ij x_j - x_i).
Section apply_laplacian(const GaugedLaplacian& L, const Section& x);

// Z-weighted inner product sum_i Z_i <x_i, y_i>.
double inner_product_z(const WeightedGraph& g, const Section& x,
                       const Section& y);

// Norm induced by inner_product_z.
double z_norm(const WeightedGraph& g, const Section& x);

// (1/2) sum over ordered adjacent pairs of k_ij |alpha_ij x_j - x_i|^2;
// equals <<x, Lx>>_Z by the summation-by-parts identity.
double dirichlet_energy(const GaugedLaplacian& L, const Section& x);

// Dense (node_count*dim)^2 assembly with identity diagonal blocks and
// -(k_ij / Z_i) alpha_ij off-diagonal blocks, acting on row-major flattened
// sections.  Throws invalid_input beyond kDenseCap.
Eigen::MatrixXd assemble_dense(const GaugedLaplacian& L);

// Eigendecomposition; see GaugedLaplacian::spectrum().
const Spectrum& spectrum(const GaugedLaplacian& L);

// Smallest eigenvalue exceeding `tol` (the spectral gap when the kernel is
// nontrivial).  Throws numeric_error if every eigenvalue is below `tol`.
double smallest_nonzero_eigenvalue(const Spectrum& s, double tol = kTolEig);

// Kernel basis through the spanning-tree construction: gauge the tree to the
// identity, intersect the fixed spaces of the cotree rotations (SVD with
// singular values <= kTolEig counted as zero), and pull the common vectors
// back through the tree gauge so the sections live in the caller's gauge.
Nullspace nullspace_spanning_tree(const GaugedLaplacian& L,
                                  const SpanningTree& t);

// Dense oracle: SVD nullspace of the symmetrized assembly (singular values
// <= 1e-8 * sigma_max count as zero), mapped back to sections.
Nullspace nullspace_dense(const GaugedLaplacian& L);

// Z-orthogonal projection onto the kernel (zero section when the kernel is
// trivial).
Section project_to_kernel(const GaugedLaplacian& L, const Section& x);

// Edge rotations copied onto the blow-up tree through its edge bijection.
VoltageGraph lift_voltage(const VoltageGraph& vg, const BlowUpTree& b);

// Evaluates the blown-up diffusion on x0: duplicate node values along the
// fiber projection, gauge the lifted voltage trivial along the tree, run the
// plain tree Laplacian normalized by the host degrees Z_{pi(I)}, undo the
// gauge, and sum each fiber back to its host node.
Section blowup_lift_apply(const GaugedLaplacian& L, const BlowUpTree& b,
                          const VoltageGraph& lifted, const Section& x0);

// True iff blowup_lift_apply reproduces apply_laplacian within `tol` in the
// entrywise max norm.  The second overload substitutes a caller-supplied
// lifted voltage (e.g. for negative controls).
bool blowup_lift_check(const GaugedLaplacian& L, const BlowUpTree& b,
                       const Section& x0, double tol = 1e-9);
bool blowup_lift_check(const GaugedLaplacian& L, const BlowUpTree& b,
                       const VoltageGraph& lifted, const Section& x0,
                       double tol);

}  // namespace gaugekit
