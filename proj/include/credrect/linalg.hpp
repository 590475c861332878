#pragma once

#include "credrect/types.hpp"

namespace credrect {

/// A square matrix whose entries are exactly symmetric. Construction rejects
/// anything else; there is no silent symmetrization.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);

  static SymMatrix identity(Eigen::Index p) { return SymMatrix(Matrix::Identity(p, p)); }
  static SymMatrix diagonal(const Vector& diag);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Matrix m_;
};

/// Lower-triangular L with L * L^T == m. Throws NotPositiveDefinite when a pivot
/// falls to or below 1e-12 times the largest diagonal entry. No jitter is added.
Matrix cholesky(const SymMatrix& m);

/// C = D^{-1/2} Sigma D^{-1/2}, D = diag(Sigma). Unit diagonal is written exactly.
SymMatrix cov_to_corr(const SymMatrix& sigma);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const SymMatrix& m);

}  // namespace credrect
