// Exact offline optima of
//   max <c, x>  s.t.  A x <= b,  0 <= x <= 1
// and of its dual  min <b, y> + <1, s>,  s >= c - A^T y,  (y, s) >= 0.
#pragma once

#include <stdexcept>
#include <string>

#include "olp/distributions.hpp"
#include "olp/dual.hpp"
#include "olp/types.hpp"

namespace olp {

enum class SolveStatus { kOptimal, kInfeasible };

struct OfflineSolution {
  SolveStatus status = SolveStatus::kOptimal;
  double value = 0.0;       // <c, x*>
  double dual_value = 0.0;  // <b, y*> + sum_t [c_t - <a_t, y*>]_+
  Vector x;                 // length T, entries in [0, 1]
  Vector y;                 // length m, >= 0
  std::size_t iterations = 0;
  /// Basic variables of the final basis: j < T is x_j, T + i is the slack
  /// of row i. Empty for the greedy knapsack.
  std::vector<std::size_t> basis;
  /// Some basic variable sits at a bound, so y* may not be unique.
  bool degenerate = false;

  double duality_gap() const { return std::abs(value - dual_value); }
};

struct SimplexOptions {
  double pivot_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  /// Largest accepted |primal - dual| after a solve.
  double gap_tolerance = 1e-8;
  std::size_t max_iterations = 0;  // 0 picks 100 * (m + 10)
};

/// Thrown when a solve fails numerically. what() names the failure;
/// instance_dump() holds the instance in the plain-text dump format.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::string dump)
      : std::runtime_error(what), dump_(std::move(dump)) {}
  const std::string& instance_dump() const { return dump_; }

 private:
  std::string dump_;
};

/// Plain-text dump: a header line "olp-instance <T> <m>", one line with b,
/// then T lines "c a_1 ... a_m", all with 17 significant digits.
std::string dump_instance(const ArrivalSequence& arrivals, std::span<const double> budget);
/// Parses dump_instance output; returns arrivals and fills `budget`.
ArrivalSequence parse_instance(const std::string& text, Vector& budget);

/// Single-resource fractional knapsack. Requires m = 1 and a_t >= 0.
/// Items are taken greedily by c/a (a = 0 with c > 0 first, ties by index);
/// y* is the minimum-norm optimal price.
OfflineSolution solve_knapsack_m1(const ArrivalSequence& arrivals, double budget);

/// Dense bounded-variable dual simplex on the m-row primal (slack basis
/// start, which is dual feasible). Leaving rows follow Bland's rule, the
/// ratio test passes bound-flip breakpoints in one step, entering ties go
/// to the smallest index. Strong duality is checked before returning.
OfflineSolution solve_simplex(const ArrivalSequence& arrivals, std::span<const double> budget,
                              const SimplexOptions& options = {});

/// Picks the knapsack for m = 1 with nonnegative requests, the simplex
/// otherwise.
OfflineSolution solve_hindsight(const ArrivalSequence& arrivals, std::span<const double> budget);

/// Expected dual of a finite support:
///   min <d, y> + sum_k p_k [c_k - <a_k, y>]_+
/// solved as the weighted primal with atoms (p_k c_k, p_k a_k) and b = d.
/// value is f(y*).
OfflineSolution solve_expected_dual_finite(const FiniteSupport& support,
                                           std::span<const double> resources,
                                           const SimplexOptions& options = {});

/// Y* of the expected finite dual as a polyhedron, from complementary
/// slackness against the primal optimum in `solution`.
OptimalFace optimal_face(const FiniteSupport& support, std::span<const double> resources,
                         const OfflineSolution& solution, double tol = 1e-9);

}  // namespace olp
