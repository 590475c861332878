#pragma once

#include "credrect/linalg.hpp"

#include <cstddef>
#include <utility>

namespace credrect {

// vech0 ordering is row-major over the strict upper triangle:
// (0,1), (0,2), ..., (0,p-1), (1,2), ...  (zero-based indices).

constexpr std::size_t vech0_length(std::size_t p) noexcept { return p * (p - 1) / 2; }

/// Position of entry (i, j), i < j, in the vech0 vector of a p x p matrix.
constexpr std::size_t vech0_index(std::size_t i, std::size_t j, std::size_t p) noexcept {
  return i * (2 * p - i - 1) / 2 + (j - i - 1);
}

/// Inverse of vech0_index.
std::pair<std::size_t, std::size_t> vech0_pair(std::size_t index, std::size_t p);

/// p such that p(p-1)/2 == d; throws LengthMismatch if there is none.
std::size_t matrix_dim_from_vech0(std::size_t d);

Vector vech0(const SymMatrix& m);

/// Symmetric matrix with unit diagonal and the given strict upper triangle.
SymMatrix unvech0(const Vector& v, std::size_t p);

}  // namespace credrect
