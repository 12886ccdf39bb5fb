#include "olp/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "linalg.hpp"

namespace olp {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
  return std::sqrt(s);
}

DualPrice::DualPrice(Vector y) : y_(std::move(y)) {
  for (double v : y_) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("dual price must be finite and nonnegative");
  }
}

double DualPrice::norm() const { return norm2(y_); }

bool OptimalFace::contains(std::span<const double> y, double tol) const {
  for (const auto& con : constraints) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < m; ++i) lhs += con.normal[i] * y[i];
    double scale = std::max(1.0, norm2(con.normal));
    if (con.equality ? std::abs(lhs - con.offset) > tol * scale : lhs - con.offset > tol * scale) return false;
  }
  return true;
}

void ErrorBoundSpec::validate() const {
  if (!(gamma >= 1.0)) throw std::invalid_argument("error bound: gamma must be >= 1");
  if (!(mu > 0.0)) throw std::invalid_argument("error bound: mu must be positive");
  if (!(diam_ystar >= 0.0)) throw std::invalid_argument("error bound: diameter must be >= 0");
}

int decide(std::span<const double> y, ArrivalRef arrival) {
  double price = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) price += arrival.request[i] * y[i];
  return arrival.reward >= price ? 1 : 0;
}

Vector stochastic_subgradient(std::span<const double> y, ArrivalRef arrival,
                              std::span<const double> resources) {
  const int x = decide(y, arrival);
  Vector g(resources.begin(), resources.end());
  if (x) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= arrival.request[i];
  }
  return g;
}

DualPrice project_nonneg(std::span<const double> y) {
  Vector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] > 0.0 ? y[i] : 0.0;
  return DualPrice(std::move(out));
}

namespace {

// max(0, c + s (y - c)) componentwise.
Vector scaled_clip(std::span<const double> y, std::span<const double> c, double s) {
  Vector z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) z[i] = std::max(0.0, c[i] + s * (y[i] - c[i]));
  return z;
}

}  // namespace

DualPrice project_ball_orthant(std::span<const double> y, double radius,
                               std::span<const double> center) {
  if (!(radius > 0)) throw std::invalid_argument("project_ball_orthant: radius must be positive");
  Vector origin;
  if (center.empty()) {
    origin.assign(y.size(), 0.0);
    center = origin;
  }
  if (center.size() != y.size()) throw std::invalid_argument("project_ball_orthant: center size mismatch");

  Vector z = scaled_clip(y, center, 1.0);
  if (distance(z, center) <= radius) return DualPrice(std::move(z));

  Vector limit = scaled_clip(y, center, 0.0);
  if (distance(limit, center) > radius) {
    throw std::invalid_argument("project_ball_orthant: ball does not meet the orthant");
  }
  double lo = 0.0, hi = 1.0;  // dist(lo) <= radius < dist(hi)
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (distance(scaled_clip(y, center, mid), center) <= radius) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return DualPrice(scaled_clip(y, center, lo));
}

DualPrice project_two_balls(std::span<const double> y, double outer_radius,
                            std::span<const double> center, double inner_radius) {
  const double slack = 1e-12;
  DualPrice first = project_ball_orthant(y, outer_radius);
  if (distance(first.values(), center) <= inner_radius * (1 + slack)) return first;
  DualPrice second = project_ball_orthant(y, inner_radius, center);
  if (second.norm() <= outer_radius * (1 + slack)) return second;

  // Both spheres are active. For multipliers (l1, l2) the minimiser of the
  // Lagrangian over the orthant is max(0, (y + l2 c) / (1 + l1 + l2)).
  // ||z|| falls as l1 grows and, with l1 tuned to the outer sphere,
  // ||z - c|| falls as l2 grows, so both are found by nested bisection.
  const std::size_t m = y.size();
  Vector z(m);
  auto point = [&](double l1, double l2) {
    for (std::size_t i = 0; i < m; ++i) z[i] = std::max(0.0, (y[i] + l2 * center[i]) / (1.0 + l1 + l2));
  };
  auto fit_outer = [&](double l2) {
    double lo = 0.0, hi = 1.0;
    point(lo, l2);
    if (norm2(z) <= outer_radius) return lo;
    for (point(hi, l2); norm2(z) > outer_radius; point(hi, l2)) hi *= 2;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      point(mid, l2);
      (norm2(z) > outer_radius ? lo : hi) = mid;
    }
    return hi;
  };
  auto inner_gap = [&](double l2) {
    point(fit_outer(l2), l2);
    return distance(z, center) - inner_radius;
  };
  double lo = 0.0, hi = 1.0;
  while (inner_gap(hi) > 0) hi *= 2;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inner_gap(mid) > 0 ? lo : hi) = mid;
  }
  point(fit_outer(hi), hi);
  return DualPrice(z);
}

double sample_dual_value(std::span<const double> y, const ArrivalSequence& arrivals,
                         std::span<const double> resources) {
  if (arrivals.empty()) throw std::invalid_argument("sample_dual_value: no arrivals");
  double linear = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) linear += resources[i] * y[i];
  long double hinge = 0.0L;
  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    auto arr = arrivals[t];
    double margin = arr.reward;
    for (std::size_t i = 0; i < y.size(); ++i) margin -= arr.request[i] * y[i];
    if (margin > 0) hinge += margin;
  }
  return linear + static_cast<double>(hinge / static_cast<long double>(arrivals.size()));
}

double expected_dual_finite(std::span<const double> y, const FiniteSupport& support,
                            std::span<const double> resources) {
  double value = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) value += resources[i] * y[i];
  for (std::size_t k = 0; k < support.size(); ++k) {
    double margin = support.atoms[k].reward;
    for (std::size_t i = 0; i < y.size(); ++i) margin -= support.atoms[k].request[i] * y[i];
    if (margin > 0) value += support.probs[k] * margin;
  }
  return value;
}

double multisecretary_dual(double y, double resource) {
  if (y >= 1.0) return resource * y;
  if (y <= 0.0) return resource * y + 0.5 - y;
  return resource * y + 0.5 * (1.0 - y) * (1.0 - y);
}

double multisecretary_optimum(double resource) { return resource >= 1.0 ? 0.0 : 1.0 - resource; }

double dist_to_optimal(std::span<const double> y, const ErrorBoundSpec& eb) {
  if (eb.y_star) return distance(y, *eb.y_star);
  if (eb.face) return distance_to_face(y, *eb.face);
  throw std::invalid_argument("dist_to_optimal: error bound spec has no optimal set");
}

namespace {

struct FaceSearch {
  const OptimalFace& face;
  std::span<const double> y;
  std::vector<std::size_t> equalities;
  std::vector<std::size_t> inequalities;
  std::vector<std::size_t> chosen;
  double best = std::numeric_limits<double>::infinity();

  void evaluate() {
    const std::size_t m = face.m;
    std::vector<std::size_t> rows = equalities;
    rows.insert(rows.end(), chosen.begin(), chosen.end());
    const std::size_t r = rows.size();
    Vector z(y.begin(), y.end());
    if (r > 0) {
      Vector gram(r * r), rhs(r);
      for (std::size_t i = 0; i < r; ++i) {
        const auto& ni = face.constraints[rows[i]].normal;
        double dot = 0.0;
        for (std::size_t k = 0; k < m; ++k) dot += ni[k] * y[k];
        rhs[i] = dot - face.constraints[rows[i]].offset;
        for (std::size_t j = 0; j < r; ++j) {
          const auto& nj = face.constraints[rows[j]].normal;
          double g = 0.0;
          for (std::size_t k = 0; k < m; ++k) g += ni[k] * nj[k];
          gram[i * r + j] = g;
        }
      }
      if (!detail::solve(gram, rhs, r, 1e-12)) return;
      for (std::size_t i = 0; i < r; ++i) {
        const auto& ni = face.constraints[rows[i]].normal;
        for (std::size_t k = 0; k < m; ++k) z[k] -= rhs[i] * ni[k];
      }
    }
    if (!face.contains(z, 1e-9)) return;
    best = std::min(best, distance(z, y));
  }

  void recurse(std::size_t start) {
    evaluate();
    if (equalities.size() + chosen.size() >= face.m) return;
    for (std::size_t i = start; i < inequalities.size(); ++i) {
      chosen.push_back(inequalities[i]);
      recurse(i + 1);
      chosen.pop_back();
    }
  }
};

}  // namespace

double distance_to_face(std::span<const double> y, const OptimalFace& face) {
  if (y.size() != face.m) throw std::invalid_argument("distance_to_face: dimension mismatch");
  if (face.contains(y, 1e-12)) return 0.0;
  FaceSearch search{face, y, {}, {}, {}};
  for (std::size_t j = 0; j < face.constraints.size(); ++j) {
    (face.constraints[j].equality ? search.equalities : search.inequalities).push_back(j);
  }
  search.recurse(0);
  if (!std::isfinite(search.best)) {
    // Degenerate description (dependent equalities); fall back to the vertex.
    return distance(y, face.vertex);
  }
  return search.best;
}

}  // namespace olp
