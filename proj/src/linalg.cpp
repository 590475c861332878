#include "credrect/linalg.hpp"

#include "credrect/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace credrect {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NonPositiveDiagonal: return "NonPositiveDiagonal";
    case ErrorKind::InvalidDof: return "InvalidDof";
    case ErrorKind::DegenerateColumn: return "DegenerateColumn";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::NoFeasibleLevel: return "NoFeasibleLevel";
    case ErrorKind::StreamExhausted: return "StreamExhausted";
    case ErrorKind::InexactExtremeSet: return "InexactExtremeSet";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::NonNumericCell: return "NonNumericCell";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "symmetric matrix must be square");
  }
  for (Eigen::Index j = 0; j < m_.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < m_.rows(); ++i) {
      if (m_(i, j) != m_(j, i)) {
        std::ostringstream os;
        os << "entries (" << i << "," << j << ") and (" << j << "," << i << ") differ";
        throw Error(ErrorKind::NotSymmetric, os.str());
      }
    }
  }
}

SymMatrix SymMatrix::diagonal(const Vector& diag) {
  return SymMatrix(Matrix(diag.asDiagonal()));
}

Matrix cholesky(const SymMatrix& sym) {
  const Matrix& a = sym.matrix();
  const Eigen::Index p = a.rows();
  Matrix l = Matrix::Zero(p, p);
  if (p == 0) return l;
  const double tol = 1e-12 * a.diagonal().maxCoeff();
  for (Eigen::Index j = 0; j < p; ++j) {
    double pivot = a(j, j) - l.row(j).head(j).squaredNorm();
    if (!(pivot > tol) || !std::isfinite(pivot)) {
      std::ostringstream os;
      os << "pivot " << j << " is " << pivot;
      throw Error(ErrorKind::NotPositiveDefinite, os.str());
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < p; ++i) {
      l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / ljj;
    }
  }
  return l;
}

SymMatrix cov_to_corr(const SymMatrix& sigma) {
  const Matrix& s = sigma.matrix();
  const Eigen::Index p = s.rows();
  Vector inv_sd(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!(s(i, i) > 0.0)) {
      throw Error(ErrorKind::NonPositiveDiagonal, "diagonal entry " + std::to_string(i) + " is not positive");
    }
    inv_sd(i) = 1.0 / std::sqrt(s(i, i));
  }
  Matrix c(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    c(j, j) = 1.0;
    for (Eigen::Index i = j + 1; i < p; ++i) {
      double v = s(i, j) * inv_sd(i) * inv_sd(j);
      v = std::clamp(v, -1.0, 1.0);
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return SymMatrix(std::move(c));
}

double min_eigenvalue(const SymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace credrect
