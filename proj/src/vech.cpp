#include "credrect/vech.hpp"

#include "credrect/error.hpp"

#include <cmath>

namespace credrect {

std::pair<std::size_t, std::size_t> vech0_pair(std::size_t index, std::size_t p) {
  if (index >= vech0_length(p)) {
    throw Error(ErrorKind::OutOfRange, "vech0 index " + std::to_string(index) + " out of range");
  }
  std::size_t i = 0;
  std::size_t row_len = p - 1;
  while (index >= row_len) {
    index -= row_len;
    ++i;
    --row_len;
  }
  return {i, i + 1 + index};
}

std::size_t matrix_dim_from_vech0(std::size_t d) {
  const auto p = static_cast<std::size_t>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(d))) / 2.0));
  if (p < 2 || vech0_length(p) != d) {
    throw Error(ErrorKind::LengthMismatch, "length " + std::to_string(d) + " is not p(p-1)/2 for any p >= 2");
  }
  return p;
}

Vector vech0(const SymMatrix& m) {
  const auto p = static_cast<std::size_t>(m.dim());
  Vector v(static_cast<Eigen::Index>(vech0_length(p)));
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      v(k++) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return v;
}

SymMatrix unvech0(const Vector& v, std::size_t p) {
  if (static_cast<std::size_t>(v.size()) != vech0_length(p)) {
    throw Error(ErrorKind::LengthMismatch, "expected length " + std::to_string(vech0_length(p)) + ", got " +
                                               std::to_string(v.size()));
  }
  const auto n = static_cast<Eigen::Index>(p);
  Matrix m = Matrix::Identity(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      m(i, j) = v(k);
      m(j, i) = v(k);
      ++k;
    }
  }
  return SymMatrix(std::move(m));
}

}  // namespace credrect
