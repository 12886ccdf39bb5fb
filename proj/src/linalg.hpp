// Small dense helpers for m x m systems (m is a handful of resources).
#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace olp::detail {

/// In-place Gauss-Jordan inverse of a row-major n x n matrix with partial
/// pivoting. Returns false if a pivot falls below `tol` in magnitude.
template <class Real>
inline bool invert(std::vector<Real>& a, std::size_t n, double tol = 1e-13) {
  std::vector<Real> inv(n * n, Real(0));
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (std::abs(a[piv * n + col]) < tol) return false;
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a[piv * n + k], a[col * n + k]);
        std::swap(inv[piv * n + k], inv[col * n + k]);
      }
    }
    const Real p = a[col * n + col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col * n + k] /= p;
      inv[col * n + k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Real f = a[r * n + col];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  a = std::move(inv);
  return true;
}

/// Solves the n x n system A x = b (row-major A). Returns false if singular.
inline bool solve(std::vector<double> a, std::vector<double>& b, std::size_t n, double tol = 1e-13) {
  if (!invert(a, n, tol)) return false;
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) x[i] += a[i * n + k] * b[k];
  }
  b = std::move(x);
  return true;
}

}  // namespace olp::detail
