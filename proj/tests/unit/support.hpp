// Small independent oracles shared by the unit tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "olp/types.hpp"

namespace testing {

inline olp::ArrivalSequence sequence(const std::vector<double>& c, const std::vector<std::vector<double>>& a) {
  olp::ArrivalSequence seq(a.empty() ? 1 : a.front().size());
  for (std::size_t t = 0; t < c.size(); ++t) seq.push_back(c[t], a[t]);
  return seq;
}

// Gaussian elimination with partial pivoting; false when singular.
inline bool gauss_solve(std::vector<std::vector<double>> M, std::vector<double> rhs, std::vector<double>& x) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    }
    if (std::abs(M[piv][col]) < 1e-12) return false;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = M[r][col] / M[col][col];
      for (std::size_t k = col; k < n; ++k) M[r][k] -= f * M[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= M[i][k] * x[k];
    x[i] = s / M[i][i];
  }
  return true;
}

// Optimum of max c.x, A x <= b, 0 <= x <= 1 by enumerating every vertex:
// choose which rows are tight and which variables sit at 0 or 1, solve for
// the rest, keep the best feasible point. Exponential; tiny instances only.
inline double vertex_enumeration(const olp::ArrivalSequence& arr, const std::vector<double>& b) {
  const std::size_t T = arr.size(), m = b.size();
  double best = -std::numeric_limits<double>::infinity();
  // Each variable: 0 = at lower, 1 = at upper, 2 = free. Each row: tight or not.
  std::size_t combos = 1;
  for (std::size_t j = 0; j < T; ++j) combos *= 3;
  for (std::size_t code = 0; code < combos; ++code) {
    std::vector<int> state(T);
    std::size_t c = code, n_free = 0;
    for (std::size_t j = 0; j < T; ++j) {
      state[j] = static_cast<int>(c % 3);
      c /= 3;
      n_free += state[j] == 2;
    }
    for (std::size_t rows = 0; rows < (1u << m); ++rows) {
      std::vector<std::size_t> tight;
      for (std::size_t i = 0; i < m; ++i) {
        if (rows >> i & 1) tight.push_back(i);
      }
      if (tight.size() != n_free) continue;
      std::vector<double> x(T, 0.0);
      for (std::size_t j = 0; j < T; ++j) x[j] = state[j] == 1 ? 1.0 : 0.0;
      if (n_free > 0) {
        std::vector<std::size_t> free_idx;
        for (std::size_t j = 0; j < T; ++j) {
          if (state[j] == 2) free_idx.push_back(j);
        }
        std::vector<std::vector<double>> M(n_free, std::vector<double>(n_free));
        std::vector<double> rhs(n_free), sol;
        for (std::size_t r = 0; r < n_free; ++r) {
          const std::size_t i = tight[r];
          rhs[r] = b[i];
          for (std::size_t j = 0; j < T; ++j) {
            if (state[j] == 1) rhs[r] -= arr[j].request[i];
          }
          for (std::size_t k = 0; k < n_free; ++k) M[r][k] = arr[free_idx[k]].request[i];
        }
        if (!gauss_solve(M, rhs, sol)) continue;
        for (std::size_t k = 0; k < n_free; ++k) x[free_idx[k]] = sol[k];
      }
      bool feasible = true;
      for (double v : x) feasible = feasible && v >= -1e-9 && v <= 1 + 1e-9;
      for (std::size_t i = 0; i < m && feasible; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < T; ++j) s += arr[j].request[i] * x[j];
        feasible = s <= b[i] + 1e-9;
      }
      if (!feasible) continue;
      double v = 0;
      for (std::size_t j = 0; j < T; ++j) v += arr[j].reward * x[j];
      best = std::max(best, v);
    }
  }
  return best;
}

struct Disc {
  std::vector<double> center;
  double radius;
};

// Nearest point to y in {z >= 0} intersected with planar discs, by listing
// every candidate the KKT conditions allow (no active constraint, one
// active boundary, or a corner where two boundaries meet) and keeping the
// nearest feasible one. Plane only.
inline std::vector<double> planar_projection(const std::vector<double>& y, const std::vector<Disc>& discs) {
  using P = std::vector<double>;
  std::vector<P> cand{y, {0.0, y[1]}, {y[0], 0.0}, {0.0, 0.0}};
  for (const auto& d : discs) {
    const double dx = y[0] - d.center[0], dy = y[1] - d.center[1];
    const double n = std::hypot(dx, dy);
    if (n > 0) cand.push_back({d.center[0] + d.radius * dx / n, d.center[1] + d.radius * dy / n});
    for (int axis = 0; axis < 2; ++axis) {
      const double rest = d.radius * d.radius - d.center[axis] * d.center[axis];
      if (rest < 0) continue;
      for (double sgn : {-1.0, 1.0}) {
        P z(2, 0.0);
        z[1 - axis] = d.center[1 - axis] + sgn * std::sqrt(rest);
        cand.push_back(z);
      }
    }
  }
  for (std::size_t i = 0; i < discs.size(); ++i) {
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      const auto &a = discs[i], &b = discs[j];
      const double ex = b.center[0] - a.center[0], ey = b.center[1] - a.center[1];
      const double dist = std::hypot(ex, ey);
      if (dist == 0 || dist > a.radius + b.radius || dist < std::abs(a.radius - b.radius)) continue;
      const double along = (a.radius * a.radius - b.radius * b.radius + dist * dist) / (2 * dist);
      const double h = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
      const double mx = a.center[0] + along * ex / dist, my = a.center[1] + along * ey / dist;
      cand.push_back({mx - h * ey / dist, my + h * ex / dist});
      cand.push_back({mx + h * ey / dist, my - h * ex / dist});
    }
  }
  auto feasible = [&](const P& z) {
    if (z[0] < -1e-12 || z[1] < -1e-12) return false;
    for (const auto& d : discs) {
      if (std::hypot(z[0] - d.center[0], z[1] - d.center[1]) > d.radius * (1 + 1e-12) + 1e-12) return false;
    }
    return true;
  };
  P best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (auto& z : cand) {
    z[0] = std::max(z[0], 0.0);
    z[1] = std::max(z[1], 0.0);
    if (!feasible(z)) continue;
    const double v = std::hypot(z[0] - y[0], z[1] - y[1]);
    if (v < best_cost) {
      best_cost = v;
      best = z;
    }
  }
  return best;
}

inline double norm_diff(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
  return std::sqrt(s);
}

}  // namespace testing
