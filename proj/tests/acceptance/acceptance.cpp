// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
// and exits nonzero when any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "olp/algorithms.hpp"
#include "olp/bench.hpp"
#include "olp/diagnostics.hpp"
#include "olp/hindsight.hpp"
#include "olp/rng.hpp"
#include "../unit/support.hpp"

using namespace olp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double mean_at(const std::vector<AggregateRow>& rows, std::size_t T) {
  for (const auto& r : rows) {
    if (r.horizon == T) return r.mean_rpv;
  }
  throw std::runtime_error("no row at T=" + std::to_string(T));
}

// Shared multi-secretary run behind criteria 1, 2 and 5.
const PlanResult& secretary_run() {
  static const PlanResult result = [] {
    ExperimentPlan plan = scenario_plan("dilemma");
    plan.name = "acceptance-secretary";
    plan.horizons = log_grid(100, 100000, 10);
    plan.trials = 100;
    plan.seed = 1;
    return run_plan(plan);
  }();
  return result;
}

Outcome benchmark_rate() {
  auto fit = fit_growth_slope(rows_for(secretary_run().rows, "M1"));
  return {fit.slope >= 0.40 && fit.slope <= 0.60, fmt("M1 slope %.3f (r2 %.3f), want [0.40, 0.60]", fit.slope, fit.r_squared)};
}

Outcome two_phase_continuous_rate() {
  const double s1 = fit_growth_slope(rows_for(secretary_run().rows, "M1")).slope;
  const double s2 = fit_growth_slope(rows_for(secretary_run().rows, "M2")).slope;
  const bool ok = s2 >= 0.20 && s2 <= 0.45 && s2 <= s1 - 0.08;
  return {ok, fmt("M2 slope %.3f, M1 slope %.3f, want M2 in [0.20, 0.45] and <= M1 - 0.08", s2, s1)};
}

Outcome two_phase_finite_rate() {
  ExperimentPlan plan = scenario_plan("finite-1");
  plan.seed = 1;
  auto res = run_plan(plan);
  auto m1 = rows_for(res.rows, "M1");
  auto m2 = rows_for(res.rows, "M2");
  const double r2 = mean_at(m2, 100000) / mean_at(m2, 1000);
  const double r1 = mean_at(m1, 100000) / mean_at(m1, 1000);
  return {r2 <= 3.0 && r1 >= 5.0,
          fmt("M2 ratio %.2f (want <= 3), M1 ratio %.2f (want >= 5); M2 at 1e5 = %.2f", r2, r1, mean_at(m2, 100000))};
}

Outcome table_ordering() {
  ExperimentPlan plan = scenario_plan("continuous-1");
  plan.horizons = {100000};
  plan.trials = 20;
  plan.seed = 1;
  auto res = run_plan(plan);
  const double m1 = mean_at(rows_for(res.rows, "M1"), 100000);
  const double m2 = mean_at(rows_for(res.rows, "M2"), 100000);
  return {m2 <= m1 / 3, fmt("T=1e5, 20 trials: M1 %.2f, M2 %.2f, ratio %.2f (want >= 3)", m1, m2, m1 / m2)};
}

Outcome dilemma() {
  const double slope = fit_growth_slope(rows_for(secretary_run().rows, "learner-as-decider")).slope;
  ErrorBoundSpec eb;
  eb.gamma = 2.0;
  eb.mu = 0.5;
  eb.y_star = Vector{0.5};
  const Vector d{0.5};
  auto err = final_iterate_error(MultiSecretary{}, d, 100000, 100, eb, 0.5, false, 1);
  const double median_abs = std::sqrt(err.median);
  const double cap = 3.0 / std::sqrt(1e5);
  return {slope >= 0.40 && median_abs <= cap,
          fmt("decision slope %.3f (want >= 0.40), median |y - 1/2| %.2e (want <= %.2e)", slope, median_abs, cap)};
}

Outcome oracle_equivalence() {
  RandomStream rng(61, Stream::kTest);
  double worst_knap = 0, worst_vertex = 0, worst_gap = 0;
  auto instance = [&](std::size_t T, std::size_t m, bool mixed) {
    ArrivalSequence arr(m);
    Vector a(m);
    for (std::size_t t = 0; t < T; ++t) {
      for (auto& ai : a) ai = mixed && rng.uniform() < 0.15 ? -rng.uniform() : rng.uniform(0, 2);
      const double c = mixed && rng.uniform() < 0.15 ? -rng.uniform() : rng.uniform(0, 2);
      arr.push_back(c, a);
    }
    return arr;
  };
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t T = 1 + static_cast<std::size_t>(rng.uniform() * 80);
    auto arr = instance(T, 1, false);
    const double b = rng.uniform(0, 0.8) * static_cast<double>(T);
    auto k = solve_knapsack_m1(arr, b);
    auto s = solve_simplex(arr, Vector{b});
    worst_knap = std::max(worst_knap, std::abs(k.value - s.value));
    worst_gap = std::max({worst_gap, s.duality_gap(), k.duality_gap()});
  }
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t T = 1 + static_cast<std::size_t>(rng.uniform() * 6);
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 2);
    auto arr = instance(T, m, rep % 2 == 1);
    Vector b(m);
    for (auto& bi : b) bi = rng.uniform(0, 0.7) * static_cast<double>(T);
    auto s = solve_simplex(arr, b);
    worst_vertex = std::max(worst_vertex, std::abs(s.value - testing::vertex_enumeration(arr, b)));
    worst_gap = std::max(worst_gap, s.duality_gap());
  }
  const bool ok = worst_knap <= 1e-9 && worst_vertex <= 1e-9 && worst_gap <= 1e-8;
  return {ok, fmt("max |simplex - knapsack| %.1e, max |simplex - vertices| %.1e, max gap %.1e", worst_knap,
                  worst_vertex, worst_gap)};
}

Outcome dual_oracle() {
  // Frozen sample of a two-resource continuous distribution.
  MarketConfig config;
  config.horizon = 200000;
  config.m = 2;
  config.resources = {0.5, 0.4};
  config.seed = 71;
  auto arr = generate_arrivals(ContinuousU1{2}, config);
  const auto& d = config.resources;
  RandomStream rng(72, Stream::kTest);
  const double h = 1e-5;
  double worst_fd = 0;
  for (int p = 0; p < 20; ++p) {
    Vector y{rng.uniform(0, 1.5), rng.uniform(0, 1.5)};
    std::vector<long double> g(2, 0.0L);
    for (std::size_t t = 0; t < arr.size(); ++t) {
      auto s = stochastic_subgradient(y, arr[t], d);
      g[0] += s[0];
      g[1] += s[1];
    }
    for (std::size_t i = 0; i < 2; ++i) {
      Vector up = y, down = y;
      up[i] += h;
      down[i] -= h;
      const double fd = (sample_dual_value(up, arr, d) - sample_dual_value(down, arr, d)) / (2 * h);
      worst_fd = std::max(worst_fd, std::abs(fd - static_cast<double>(g[i] / arr.size())));
    }
  }
  MarketConfig sec;
  sec.horizon = 1000000;
  sec.resources = {0.5};
  sec.seed = 73;
  auto big = generate_arrivals(MultiSecretary{}, sec);
  double worst_mc = 0;
  for (double y : {0.0, 0.2, 0.5, 0.8, 1.0, 1.3}) {
    worst_mc = std::max(worst_mc, std::abs(sample_dual_value(Vector{y}, big, sec.resources) - multisecretary_dual(y, 0.5)));
  }
  return {worst_fd <= 1e-3 && worst_mc <= 2e-3,
          fmt("max |finite difference - mean subgradient| %.1e (want <= 1e-3), max |closed form - MC| %.1e (want <= 2e-3)",
              worst_fd, worst_mc)};
}

Outcome noise_ball() {
  ErrorBoundSpec eb;
  eb.gamma = 2.0;
  eb.mu = 0.5;
  eb.y_star = Vector{0.5};
  const Vector d{0.5};
  const double spread = 1.0 + 0.5;
  const double cap = 40.0 * spread * spread / eb.mu;
  double fitted = 0;
  std::string parts;
  for (std::size_t T : {1000, 10000, 100000}) {
    const double alpha = std::pow(static_cast<double>(T), -2.0 / 3.0);
    auto stat = noise_ball_statistic(MultiSecretary{}, d, T, alpha, 100, eb, 81);
    const double c = stat.mean / (alpha * std::log(static_cast<double>(T)));
    fitted = std::max(fitted, c);
    parts += fmt(" T=%.0f:%.3f", static_cast<double>(T), c);
  }
  return {fitted <= cap, fmt("fitted C %.3f (want <= %.0f);", fitted, cap) + parts};
}

Outcome dual_convergence() {
  ErrorBoundSpec eb;
  eb.gamma = 2.0;
  eb.mu = 0.5;
  eb.y_star = Vector{0.5};
  const Vector d{0.5};
  auto grid = log_grid(100, 100000, 10);
  std::vector<double> means;
  for (std::size_t T : grid) means.push_back(empirical_dual_convergence(MultiSecretary{}, d, T, 400, eb, 91).mean);
  bool monotone = true;
  for (std::size_t i = 1; i < means.size(); ++i) monotone = monotone && means[i] < means[i - 1];
  double at100 = means.front(), at1e4 = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == 10000) at1e4 = means[i];
  }
  const double shrink = at100 / at1e4;
  return {monotone && shrink >= 3.0, std::string("monotone ") + (monotone ? "yes" : "no") +
                                         fmt(", shrink 1e2 -> 1e4 %.1fx (want >= 3); first %.2e last %.2e", shrink,
                                             at100, means.back())};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "olp_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  ExperimentPlan plan = scenario_plan("continuous-1");
  plan.csv_path = (dir / "first.csv").string();
  run_plan(plan);
  plan.csv_path = (dir / "second.csv").string();
  plan.workers = plan.workers == 1 ? 2 : 1;
  run_plan(plan);
  const auto a = read_file(dir / "first.csv"), b = read_file(dir / "second.csv");
  fs::remove_all(dir);
  return {!a.empty() && a == b, fmt("default plan CSVs: %.0f and %.0f bytes, identical: ", static_cast<double>(a.size()),
                                    static_cast<double>(b.size())) + (a == b ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"benchmark rate", benchmark_rate},
      {"two-phase continuous rate", two_phase_continuous_rate},
      {"two-phase finite rate", two_phase_finite_rate},
      {"continuous-1 ordering at T=1e5", table_ordering},
      {"learner-as-decider dilemma", dilemma},
      {"LP oracle equivalence", oracle_equivalence},
      {"dual oracle correctness", dual_oracle},
      {"noise ball", noise_ball},
      {"hindsight dual convergence", dual_convergence},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !out.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
