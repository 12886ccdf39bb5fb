#include "olp/hindsight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "linalg.hpp"

namespace olp {

namespace {

// <b, y> + sum_t [c_t - <a_t, y>]_+ accumulated in extended precision.
double dual_objective(const ArrivalSequence& arrivals, std::span<const double> budget,
                      std::span<const double> y) {
  const std::size_t m = budget.size();
  long double total = 0.0L;
  for (std::size_t i = 0; i < m; ++i) total += static_cast<long double>(budget[i]) * y[i];
  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    auto arr = arrivals[t];
    long double margin = arr.reward;
    for (std::size_t i = 0; i < m; ++i) margin -= static_cast<long double>(arr.request[i]) * y[i];
    if (margin > 0) total += margin;
  }
  return static_cast<double>(total);
}

double primal_objective(const ArrivalSequence& arrivals, const Vector& x) {
  long double total = 0.0L;
  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    total += static_cast<long double>(arrivals[t].reward) * x[t];
  }
  return static_cast<double>(total);
}

struct Breakpoint {
  double step;
  std::size_t index;
  double weight;  // |alpha_j|, the slope lost when passing a boxed variable
};

}  // namespace

std::string dump_instance(const ArrivalSequence& arrivals, std::span<const double> budget) {
  std::ostringstream out;
  char buf[64];
  out << "olp-instance " << arrivals.size() << ' ' << budget.size() << '\n';
  for (std::size_t i = 0; i < budget.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", budget[i]);
    out << (i ? " " : "") << buf;
  }
  out << '\n';
  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    auto arr = arrivals[t];
    std::snprintf(buf, sizeof buf, "%.17g", arr.reward);
    out << buf;
    for (double a : arr.request) {
      std::snprintf(buf, sizeof buf, "%.17g", a);
      out << ' ' << buf;
    }
    out << '\n';
  }
  return out.str();
}

ArrivalSequence parse_instance(const std::string& text, Vector& budget) {
  std::istringstream in(text);
  std::string tag;
  std::size_t T = 0, m = 0;
  if (!(in >> tag >> T >> m) || tag != "olp-instance") throw std::invalid_argument("parse_instance: bad header");
  budget.assign(m, 0.0);
  for (auto& bi : budget) {
    if (!(in >> bi)) throw std::invalid_argument("parse_instance: truncated budget");
  }
  ArrivalSequence arrivals(m);
  Vector a(m);
  for (std::size_t t = 0; t < T; ++t) {
    double c;
    if (!(in >> c)) throw std::invalid_argument("parse_instance: truncated arrivals");
    for (auto& ai : a) {
      if (!(in >> ai)) throw std::invalid_argument("parse_instance: truncated arrivals");
    }
    arrivals.push_back(c, a);
  }
  return arrivals;
}

OfflineSolution solve_knapsack_m1(const ArrivalSequence& arrivals, double budget) {
  if (arrivals.dimension() != 1) throw std::invalid_argument("solve_knapsack_m1: requires m = 1");
  const std::size_t T = arrivals.size();
  OfflineSolution sol;
  sol.x.assign(T, 0.0);
  sol.y.assign(1, 0.0);
  if (budget < 0) {
    sol.status = SolveStatus::kInfeasible;
    return sol;
  }

  std::vector<std::size_t> items;
  items.reserve(T);
  for (std::size_t t = 0; t < T; ++t) {
    auto arr = arrivals[t];
    if (arr.request[0] < 0) throw std::invalid_argument("solve_knapsack_m1: requests must be nonnegative");
    if (arr.reward <= 0) continue;
    if (arr.request[0] == 0) {
      sol.x[t] = 1.0;
    } else {
      items.push_back(t);
    }
  }
  auto ratio = [&](std::size_t t) { return arrivals[t].reward / arrivals[t].request[0]; };
  std::stable_sort(items.begin(), items.end(),
                   [&](std::size_t lhs, std::size_t rhs) { return ratio(lhs) > ratio(rhs); });

  double capacity = budget;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const std::size_t t = items[k];
    const double a = arrivals[t].request[0];
    if (a <= capacity) {
      sol.x[t] = 1.0;
      capacity -= a;
      continue;
    }
    sol.x[t] = capacity / a;
    // The first item not fully taken prices the resource (minimum-norm y*).
    sol.y[0] = ratio(t);
    break;
  }
  sol.value = primal_objective(arrivals, sol.x);
  sol.dual_value = dual_objective(arrivals, std::span<const double>(&budget, 1), sol.y);
  return sol;
}

OfflineSolution solve_simplex(const ArrivalSequence& arrivals, std::span<const double> budget,
                              const SimplexOptions& options) {
  const std::size_t T = arrivals.size();
  const std::size_t m = arrivals.dimension();
  if (budget.size() != m) throw std::invalid_argument("solve_simplex: budget length must equal m");
  const double ptol = options.pivot_tolerance;
  const double ftol = options.feasibility_tolerance;
  const std::size_t max_iterations = options.max_iterations ? options.max_iterations : 100 * (m + 10);

  // Variables: j < T are x_j in [0, 1]; T + i is the slack of row i in [0, inf).
  auto is_slack = [T](std::size_t j) { return j >= T; };
  auto column_dot = [&](std::span<const double> v, std::size_t j) {
    if (is_slack(j)) return v[j - T];
    auto a = arrivals[j].request;
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += v[i] * a[i];
    return s;
  };
  auto cost = [&](std::size_t j) { return is_slack(j) ? 0.0 : -arrivals[j].reward; };

  std::vector<std::size_t> basis(m);
  std::vector<char> basic(T + m, 0);
  std::vector<char> at_upper(T, 0);
  for (std::size_t i = 0; i < m; ++i) {
    basis[i] = T + i;
    basic[T + i] = 1;
  }
  // Slack basis with y = 0: dual feasible when every positive reward sits at
  // its upper bound.
  for (std::size_t t = 0; t < T; ++t) at_upper[t] = arrivals[t].reward > 0 ? 1 : 0;

  OfflineSolution sol;
  // Basis algebra in extended precision: finite supports repeat atoms, so
  // bases can be badly conditioned.
  std::vector<long double> binv(m * m), rhs(m);
  Vector xb(m), pi(m), row(m);
  std::vector<Breakpoint> breakpoints;
  breakpoints.reserve(T + m);

  for (;;) {
    // Basis inverse and primal/dual values from scratch; m is small.
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = basis[r];
        binv[i * m + r] = is_slack(j) ? (j - T == i ? 1.0L : 0.0L) : arrivals[j].request[i];
      }
    }
    if (!detail::invert(binv, m, 1e-14)) {
      throw SolverError("solve_simplex: singular basis", dump_instance(arrivals, budget));
    }
    for (std::size_t i = 0; i < m; ++i) rhs[i] = budget[i];
    for (std::size_t t = 0; t < T; ++t) {
      if (basic[t] || !at_upper[t]) continue;
      auto a = arrivals[t].request;
      for (std::size_t i = 0; i < m; ++i) rhs[i] -= a[i];
    }
    for (std::size_t r = 0; r < m; ++r) {
      long double v = 0.0L;
      for (std::size_t i = 0; i < m; ++i) v += binv[r * m + i] * rhs[i];
      xb[r] = static_cast<double>(v);
    }
    for (std::size_t i = 0; i < m; ++i) {
      long double v = 0.0L;
      for (std::size_t r = 0; r < m; ++r) v += cost(basis[r]) * binv[r * m + i];
      pi[i] = static_cast<double>(v);
    }

    // Bland: the infeasible basic variable with the smallest index leaves.
    std::size_t leave = m;
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t j = basis[r];
      const bool low = xb[r] < -ftol;
      const bool high = !is_slack(j) && xb[r] > 1.0 + ftol;
      if ((low || high) && (leave == m || j < basis[leave])) leave = r;
    }
    if (leave == m) break;

    if (sol.iterations >= max_iterations) {
      throw SolverError("solve_simplex: iteration limit reached", dump_instance(arrivals, budget));
    }
    ++sol.iterations;

    const bool below = xb[leave] < -ftol;
    const double sign = below ? 1.0 : -1.0;
    double slope = below ? -xb[leave] : xb[leave] - 1.0;
    for (std::size_t i = 0; i < m; ++i) row[i] = static_cast<double>(binv[leave * m + i]);

    breakpoints.clear();
    for (std::size_t j = 0; j < T + m; ++j) {
      if (basic[j]) continue;
      const double alpha = column_dot(row, j);
      const double scaled = sign * alpha;
      const double reduced = cost(j) - column_dot(pi, j);
      const bool upper = !is_slack(j) && at_upper[j];
      if (!upper && scaled < -ptol) {
        breakpoints.push_back({std::max(reduced, 0.0) / -scaled, j, std::abs(alpha)});
      } else if (upper && scaled > ptol) {
        breakpoints.push_back({std::max(-reduced, 0.0) / scaled, j, std::abs(alpha)});
      }
    }
    std::sort(breakpoints.begin(), breakpoints.end(), [](const Breakpoint& l, const Breakpoint& r) {
      return l.step < r.step || (l.step == r.step && l.index < r.index);
    });

    std::size_t enter = T + m;
    std::size_t passed = 0;
    for (; passed < breakpoints.size(); ++passed) {
      const auto& bp = breakpoints[passed];
      if (is_slack(bp.index) || slope - bp.weight <= 0.0) {
        enter = bp.index;
        break;
      }
      slope -= bp.weight;
    }
    if (enter == T + m) {
      // Dual ray: the primal has no feasible point.
      sol.status = SolveStatus::kInfeasible;
      sol.x.assign(T, 0.0);
      sol.y.assign(m, 0.0);
      return sol;
    }
    for (std::size_t k = 0; k < passed; ++k) at_upper[breakpoints[k].index] ^= 1;

    const std::size_t leaving = basis[leave];
    basic[leaving] = 0;
    if (!is_slack(leaving)) at_upper[leaving] = below ? 0 : 1;
    basis[leave] = enter;
    basic[enter] = 1;
  }

  sol.x.assign(T, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    if (!basic[t]) sol.x[t] = at_upper[t] ? 1.0 : 0.0;
  }
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t j = basis[r];
    const bool at_bound = std::abs(xb[r]) <= ftol || (!is_slack(j) && std::abs(xb[r] - 1.0) <= ftol);
    sol.degenerate = sol.degenerate || at_bound;
    if (!is_slack(j)) sol.x[j] = std::clamp(xb[r], 0.0, 1.0);
  }
  sol.y.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) sol.y[i] = std::max(0.0, -pi[i]);
  sol.basis = basis;
  sol.value = primal_objective(arrivals, sol.x);
  sol.dual_value = dual_objective(arrivals, budget, sol.y);
  if (!(sol.duality_gap() <= options.gap_tolerance)) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "solve_simplex: duality gap %.3e exceeds tolerance", sol.duality_gap());
    throw SolverError(msg, dump_instance(arrivals, budget));
  }
  return sol;
}

OfflineSolution solve_hindsight(const ArrivalSequence& arrivals, std::span<const double> budget) {
  if (arrivals.dimension() == 1) {
    auto a = arrivals.requests();
    if (std::all_of(a.begin(), a.end(), [](double v) { return v >= 0; })) {
      return solve_knapsack_m1(arrivals, budget[0]);
    }
  }
  return solve_simplex(arrivals, budget);
}

OfflineSolution solve_expected_dual_finite(const FiniteSupport& support,
                                           std::span<const double> resources,
                                           const SimplexOptions& options) {
  support.validate();
  const std::size_t m = support.dimension();
  if (resources.size() != m) throw std::invalid_argument("solve_expected_dual_finite: d has wrong length");
  ArrivalSequence weighted(m);
  Vector a(m);
  for (std::size_t k = 0; k < support.size(); ++k) {
    const double p = support.probs[k];
    for (std::size_t i = 0; i < m; ++i) a[i] = p * support.atoms[k].request[i];
    weighted.push_back(p * support.atoms[k].reward, a);
  }
  return solve_simplex(weighted, resources, options);
}

OptimalFace optimal_face(const FiniteSupport& support, std::span<const double> resources,
                         const OfflineSolution& solution, double tol) {
  const std::size_t m = support.dimension();
  OptimalFace face;
  face.m = m;
  face.vertex = solution.y;
  for (std::size_t i = 0; i < m; ++i) {
    Vector e(m, 0.0);
    double used = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k) {
      used += support.probs[k] * support.atoms[k].request[i] * solution.x[k];
    }
    const bool slack_row = resources[i] - used > tol;
    e[i] = slack_row ? 1.0 : -1.0;
    face.constraints.push_back({e, 0.0, slack_row});
  }
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (support.probs[k] == 0.0) continue;
    const auto& atom = support.atoms[k];
    const double xk = solution.x[k];
    if (xk > tol && xk < 1.0 - tol) {
      face.constraints.push_back({atom.request, atom.reward, true});
    } else if (xk >= 1.0 - tol) {
      face.constraints.push_back({atom.request, atom.reward, false});
    } else {
      Vector neg(atom.request);
      for (auto& v : neg) v = -v;
      face.constraints.push_back({neg, -atom.reward, false});
    }
  }
  return face;
}

}  // namespace olp
