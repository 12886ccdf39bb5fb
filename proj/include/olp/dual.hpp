// Dual-function machinery: the threshold decision rule, the stochastic
// subgradient oracle, projections, sample/expected dual values and
// distances to the optimal dual set.
#pragma once

#include <optional>
#include <span>

#include "olp/distributions.hpp"
#include "olp/types.hpp"

namespace olp {

/// Nonnegative vector of resource prices.
class DualPrice {
 public:
  DualPrice() = default;
  /// Throws std::invalid_argument on any negative or non-finite entry.
  explicit DualPrice(Vector y);
  static DualPrice zeros(std::size_t m) { return DualPrice(Vector(m, 0.0)); }

  const Vector& values() const { return y_; }
  std::size_t size() const { return y_.size(); }
  double operator[](std::size_t i) const { return y_[i]; }
  double norm() const;

  operator std::span<const double>() const { return y_; }  // NOLINT

 private:
  Vector y_;
};

/// One linear constraint normal . y <= offset, or == offset.
struct LinearConstraint {
  Vector normal;
  double offset = 0.0;
  bool equality = false;
};

/// A polyhedral description of an optimal dual set Y*.
struct OptimalFace {
  std::size_t m = 0;
  Vector vertex;  // one optimal point
  std::vector<LinearConstraint> constraints;

  bool contains(std::span<const double> y, double tol = 1e-9) const;
};

/// Growth condition f(y) - f(y*) >= mu * dist(y, Y*)^gamma.
struct ErrorBoundSpec {
  double gamma = 2.0;
  double mu = 0.5;
  double diam_ystar = 0.0;
  std::optional<Vector> y_star;
  std::optional<OptimalFace> face;

  void validate() const;
};

/// 1 iff c >= <a, y>; ties accept.
int decide(std::span<const double> y, ArrivalRef arrival);

/// d - a * decide(y, arrival).
Vector stochastic_subgradient(std::span<const double> y, ArrivalRef arrival,
                              std::span<const double> resources);

DualPrice project_nonneg(std::span<const double> y);

/// Euclidean projection onto {z >= 0, ||z - center|| <= radius}; an empty
/// center means the origin. Exact: the KKT point is
/// z = max(0, center + s (y - center)) for the scale s in (0, 1] that puts
/// z on the sphere, found by bisection to machine precision.
/// Throws std::invalid_argument if radius <= 0 or the set is empty.
DualPrice project_ball_orthant(std::span<const double> y, double radius,
                               std::span<const double> center = {});

/// Projection onto {z >= 0, ||z|| <= outer_radius} intersected with
/// B(center, inner_radius). center must lie in the first set. Exact up to
/// bisection precision on the two sphere multipliers.
DualPrice project_two_balls(std::span<const double> y, double outer_radius,
                            std::span<const double> center, double inner_radius);

/// f_T(y) = <d, y> + (1/T) sum_t [c_t - <a_t, y>]_+.
/// Throws std::invalid_argument on an empty sequence.
double sample_dual_value(std::span<const double> y, const ArrivalSequence& arrivals,
                         std::span<const double> resources);

/// f(y) = <d, y> + sum_k p_k [c_k - <a_k, y>]_+.
double expected_dual_finite(std::span<const double> y, const FiniteSupport& support,
                            std::span<const double> resources);

/// Expected dual for c ~ U[0, 1], a = 1: d y + (1 - y)^2 / 2 on [0, 1],
/// d y beyond 1, and d y + 1/2 - y below 0.
double multisecretary_dual(double y, double resource);
/// Minimiser 1 - d of multisecretary_dual (0 once d >= 1).
double multisecretary_optimum(double resource);

/// Distance to Y*: ||y - y*|| when a singleton y_star is known, otherwise
/// the exact distance to the optimal face. Throws std::invalid_argument if
/// the spec carries neither.
double dist_to_optimal(std::span<const double> y, const ErrorBoundSpec& eb);

/// Exact Euclidean distance from y to a polyhedral face, by enumerating
/// active sets of at most m constraints and taking the nearest feasible
/// least-squares projection.
double distance_to_face(std::span<const double> y, const OptimalFace& face);

double norm2(std::span<const double> v);
double distance(std::span<const double> u, std::span<const double> v);

}  // namespace olp
