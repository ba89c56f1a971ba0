#include "gaugekit/rotation.hpp"

#include <cmath>
#include <string>

#include "gaugekit/errors.hpp"

namespace gaugekit {

Rotation::Rotation(Eigen::MatrixXd m, double tol) : m_(std::move(m)) {
  if (!validate_rotation(m_, tol)) {
    throw invalid_input("matrix is not special orthogonal at tolerance " +
                        std::to_string(tol));
  }
}

Rotation Rotation::identity(int d) {
  if (d < 1) throw invalid_input("rotation dimension must be >= 1");
  return Rotation(Eigen::MatrixXd::Identity(d, d), unchecked_tag{});
}

bool Rotation::is_identity(double tol) const {
  return (m_ - Eigen::MatrixXd::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

bool validate_rotation(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) {
    throw invalid_input("rotation candidate must be square, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (m.rows() == 0) throw invalid_input("rotation candidate must be nonempty");
  const auto d = m.rows();
  const double orth_defect =
      (m.transpose() * m - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (orth_defect > tol) return false;
  return std::abs(m.determinant() - 1.0) <= tol;
}

Rotation project_to_rotation(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw invalid_input("projection target must be square and nonempty");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  // The polar factor is unique only for invertible input.
  if (sv(0) <= 0.0 || sv(sv.size() - 1) <= 1e-12 * sv(0)) {
    throw invalid_input("cannot project a numerically singular matrix to SO(d)");
  }
  Eigen::MatrixXd u = svd.matrixU();
  const Eigen::MatrixXd v = svd.matrixV();
  // det(UVᵀ) = ±1; folding the sign into the last column of U lands the
  // product in SO(d) instead of O(d) while staying nearest in Frobenius norm.
  if ((u * v.transpose()).determinant() < 0.0) u.col(u.cols() - 1) *= -1.0;
  return Rotation(u * v.transpose(), Rotation::unchecked_tag{});
}

Rotation sample_haar(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_haar(d, rng);
}

Rotation sample_haar(int d, std::mt19937_64& rng) {
  if (d < 1) throw invalid_input("rotation dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the sign of diag(R) makes the factorization unique and Q exactly
  // Haar on O(d); a final column flip restricts to SO(d).
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(d - 1) *= -1.0;
  // Householder Q drifts from orthogonality only at machine precision, but
  // projecting costs nothing at these sizes and keeps the invariant strict.
  return project_to_rotation(q);
}

Eigen::MatrixXd eigenspace_one(const Rotation& r, double tol_eig) {
  const int d = r.dim();
  const Eigen::MatrixXd a = r.matrix() - Eigen::MatrixXd::Identity(d, d);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  int k = 0;  // number of singular values at (numerical) zero
  for (int i = 0; i < d; ++i)
    if (sv(i) <= tol_eig) ++k;
  // Singular values come sorted descending, so the nullspace basis is the
  // trailing k right singular vectors.
  return svd.matrixV().rightCols(k);
}

}  // namespace gaugekit
