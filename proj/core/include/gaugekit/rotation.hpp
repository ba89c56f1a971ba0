#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace gaugekit {

/// Orthogonality tolerance: a matrix R counts as a rotation when
/// ‖RᵀR − I‖_max ≤ tol_orth and |det R − 1| ≤ tol_orth.
inline constexpr double kTolOrth = 1e-9;

/// Absolute singular-value threshold below which a direction counts as part
/// of the eigenvalue-1 eigenspace of a rotation. Rotations have unit spectral
/// radius, so no relative scaling is needed.
inline constexpr double kTolEig = 1e-8;

/// Products of this many rotations get re-projected onto SO(d) to keep
/// round-off from accumulating along long paths.
inline constexpr int kReprojectEvery = 64;

/**
 * A d×d special-orthogonal matrix. Instances are immutable and validated at
 * construction, so a `Rotation` in hand is always safe to multiply, transpose,
 * or apply without re-checking.
 */
class Rotation {
 public:
  /// Validating constructor; throws invalid_input if M is not special
  /// orthogonal at tolerance `tol`.
  explicit Rotation(Eigen::MatrixXd m, double tol = kTolOrth);

  static Rotation identity(int d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }

  /// The inverse rotation; for orthogonal matrices this is the transpose.
  Rotation transposed() const { return Rotation(m_.transpose(), unchecked_tag{}); }

  Rotation operator*(const Rotation& rhs) const {
    return Rotation(m_ * rhs.m_, unchecked_tag{});
  }

  bool is_identity(double tol) const;

  /// Max-norm distance to another rotation of the same dimension.
  double distance_max(const Rotation& other) const {
    return (m_ - other.m_).cwiseAbs().maxCoeff();
  }

 private:
  struct unchecked_tag {};
  Rotation(Eigen::MatrixXd m, unchecked_tag) : m_(std::move(m)) {}

  Eigen::MatrixXd m_;

  friend Rotation project_to_rotation(const Eigen::MatrixXd&);
  friend Rotation sample_haar(int, std::mt19937_64&);
};

/**
 * True iff M is special orthogonal at tolerance `tol`:
 * ‖MᵀM − I‖_max ≤ tol and det M within tol of 1.
 * Throws invalid_input for non-square input.
 */
bool validate_rotation(const Eigen::MatrixXd& m, double tol = kTolOrth);

/**
 * Nearest rotation in the Frobenius sense: with SVD M = UΣVᵀ the result is
 * U·diag(1,…,1,det(UVᵀ))·Vᵀ, i.e. the special-orthogonal polar factor.
 * Throws invalid_input if M is (numerically) singular, where the polar
 * factor is not unique.
 */
Rotation project_to_rotation(const Eigen::MatrixXd& m);

/**
 * Haar-distributed random rotation: QR of a standard Gaussian matrix with the
 * R-diagonal sign correction; if the resulting determinant is −1 the last
 * column is negated (this preserves the Haar measure on SO(d)).
 * Deterministic for a given seed.
 */
Rotation sample_haar(int d, std::uint64_t seed);

/// Same sampler drawing from a caller-owned engine (for streams of samples).
Rotation sample_haar(int d, std::mt19937_64& rng);

/**
 * Orthonormal basis of the eigenspace of R for eigenvalue 1, i.e. the
 * nullspace of R − I, as the columns of a d×k matrix (k may be 0).
 * Computed via SVD; singular values ≤ tol_eig count as zero.
 */
Eigen::MatrixXd eigenspace_one(const Rotation& r, double tol_eig = kTolEig);

}  // namespace gaugekit
