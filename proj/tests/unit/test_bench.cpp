#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "olp/bench.hpp"

using namespace olp;

namespace {

AggregateRow row(std::size_t T, double mean) {
  AggregateRow r;
  r.algo = "M1";
  r.dist = "x";
  r.horizon = T;
  r.mean_rpv = mean;
  return r;
}

ExperimentPlan small_plan() {
  ExperimentPlan plan;
  plan.name = "small";
  plan.distribution.kind = "multi-secretary";
  plan.distribution.resources = {ResourceLaw::kFixed, 0.5};
  plan.algorithms = {Algo::kBenchmark, Algo::kTwoPhase, Algo::kLearnerAsDecider, Algo::kResolving};
  plan.horizons = {100, 200, 400, 800};
  plan.trials = 4;
  plan.seed = 11;
  plan.workers = 1;
  return plan;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("growth slopes") {
  std::vector<AggregateRow> sqrt_rows, flat;
  for (std::size_t T : {100, 1000, 10000, 100000}) {
    sqrt_rows.push_back(row(T, std::sqrt(static_cast<double>(T))));
    flat.push_back(row(T, 3.0));
  }
  CHECK(fit_growth_slope(sqrt_rows).slope == doctest::Approx(0.5));
  CHECK(fit_growth_slope(sqrt_rows).r_squared == doctest::Approx(1.0));
  CHECK(std::abs(fit_growth_slope(flat).slope) <= 1e-12);
  flat[2].mean_rpv = 0.0;
  CHECK_THROWS_AS(fit_growth_slope(flat), std::invalid_argument);
  sqrt_rows.pop_back();
  CHECK_THROWS_AS(fit_growth_slope(sqrt_rows), std::invalid_argument);

  std::vector<AggregateRow> logs;
  for (std::size_t T : {100, 1000, 10000, 100000}) logs.push_back(row(T, 2.0 * std::log(static_cast<double>(T)) + 1));
  CHECK(fit_log_growth(logs).slope == doctest::Approx(2.0));
  CHECK(fit_log_growth(logs).intercept == doctest::Approx(1.0));
}

TEST_CASE("log grid") {
  auto g = log_grid(100, 100000, 10);
  CHECK(g.size() == 10);
  CHECK(g.front() == 100);
  CHECK(g.back() == 100000);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(log_grid(100, 100, 1) == std::vector<std::size_t>{100});
}

TEST_CASE("plan validation") {
  auto plan = small_plan();
  CHECK_NOTHROW(plan.validate());
  plan.horizons = {200, 100};
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan.horizons = {};
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = small_plan();
  plan.trials = 0;
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = small_plan();
  plan.distribution.kind = "nope";
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
}

TEST_CASE("plans are deterministic and independent of the worker count") {
  auto plan = small_plan();
  auto a = run_plan(plan);
  auto b = run_plan(plan);
  plan.workers = 3;
  auto c = run_plan(plan);
  CHECK(reports_to_csv(a.reports) == reports_to_csv(b.reports));
  CHECK(reports_to_csv(a.reports) == reports_to_csv(c.reports));
  CHECK(rows_to_csv(a.rows) == rows_to_csv(c.rows));
  CHECK(a.reports.size() == 4 * 4 * 4);
  CHECK(a.total_trials == 16);
  CHECK(a.failed_trials == 0);
}

TEST_CASE("aggregates") {
  auto res = run_plan(small_plan());
  REQUIRE(res.rows.size() == 16);
  for (const auto& r : res.rows) {
    CHECK(r.mean_rpv == doctest::Approx(r.mean_regret + r.mean_violation).epsilon(1e-12));
    CHECK(r.trials == 4);
    CHECK_FALSE(r.mean_wall_time_s.has_value());
  }
  for (const char* algo : {"M1", "M2", "learner-as-decider", "resolving-proxy"}) {
    auto rows = rows_for(res.rows, algo);
    REQUIRE(rows.size() == 4);
    CHECK(rows.front().normalized_rpv == doctest::Approx(1.0));
    CHECK(rows.front().horizon == 100);
  }
  auto again = aggregate(res.reports, small_plan().algorithms);
  CHECK(rows_to_csv(again) == rows_to_csv(res.rows));
}

TEST_CASE("one trial at one horizon") {
  auto plan = small_plan();
  plan.horizons = {300};
  plan.trials = 1;
  plan.algorithms = {Algo::kBenchmark};
  auto res = run_plan(plan);
  CHECK(res.rows.size() == 1);
  CHECK(res.rows[0].std_rpv == 0.0);
}

TEST_CASE("per-trial CSV round trip") {
  auto res = run_plan(small_plan());
  const std::string text = reports_to_csv(res.reports);
  CHECK(text.rfind("trial_id,algo,dist,T,m,seed,regret,violation,r_plus_v,hindsight,T_e,wall_time_s\n", 0) == 0);
  auto back = reports_from_csv(text);
  REQUIRE(back.size() == res.reports.size());
  CHECK(reports_to_csv(back) == text);
  CHECK_THROWS(reports_from_csv("a,b\n1,2\n"));
}

TEST_CASE("JSON plans") {
  auto plan = plan_from_json(R"({"name": "j", "distribution": {"kind": "finite", "m": 2, "K": 3,
      "atom_law": "gamma", "resources": {"law": "fixed", "value": 0.4}},
      "algorithms": ["M1", "resolving-proxy"], "horizons": [10, 20], "trials": 2, "seed": 5,
      "two_phase": {"mode": "theorem", "gamma": 1.5}})");
  CHECK(plan.name == "j");
  CHECK(plan.distribution.K == 3);
  CHECK(plan.distribution.atom_law == AtomLaw::kGamma);
  CHECK(plan.distribution.resources.value == 0.4);
  CHECK(plan.algorithms == std::vector<Algo>{Algo::kBenchmark, Algo::kResolving});
  CHECK(plan.two_phase_mode == TwoPhaseMode::kTheorem);
  CHECK(plan.theorem_gamma == 1.5);
  auto back = plan_from_json(plan_to_json(plan));
  CHECK(plan_to_json(back) == plan_to_json(plan));
  CHECK_THROWS_AS(plan_from_json(R"({"trails": 3})"), std::invalid_argument);
  CHECK_THROWS_AS(plan_from_json(R"({"distribution": {"kind": "finite", "colour": 1}})"), std::invalid_argument);
  CHECK_THROWS_AS(plan_from_json("{not json"), std::invalid_argument);
  auto grid = plan_from_json(R"({"grid": {"lo": 100, "hi": 10000, "points": 3}})");
  CHECK(grid.horizons == std::vector<std::size_t>{100, 1000, 10000});
}

TEST_CASE("CSV, metadata and plot files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "olp_bench_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto plan = small_plan();
  plan.csv_path = (dir / "trials.csv").string();
  plan.plot_dir = (dir / "plots").string();
  plan.svg = true;
  auto res = run_plan(plan);
  CHECK(slurp(plan.csv_path) == reports_to_csv(res.reports));
  CHECK(fs::exists(plan.csv_path + ".meta.json"));
  const fs::path dat = dir / "plots" / "small_multi-secretary.dat";
  REQUIRE(fs::exists(dat));
  std::ifstream in(dat);
  std::string line;
  std::size_t data_lines = 0;
  while (std::getline(in, line)) data_lines += !line.empty() && line[0] != '#';
  CHECK(data_lines == 4 * 4);
  CHECK(slurp((dir / "plots" / "small_multi-secretary.svg").string()).find("<svg") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("scenarios") {
  auto names = scenario_names();
  CHECK(names.size() == 9);
  for (const auto& n : names) {
    auto plan = scenario_plan(n);
    CHECK_NOTHROW(plan.validate());
    CHECK(plan.trials == 100);
  }
  CHECK(scenario_plan("finite-3").distribution.K == 10);
  CHECK(scenario_plan("continuous-3").distribution.m == 5);
  CHECK_THROWS_AS(scenario_plan("continuous-9"), std::invalid_argument);
}

TEST_CASE("worker count") {
  CHECK(worker_count(3) == 3);
  setenv("OLP_WORKERS", "2", 1);
  CHECK(worker_count() == 2);
  unsetenv("OLP_WORKERS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("timing table") {
  auto plan = small_plan();
  plan.horizons = {400, 1600};
  plan.algorithms = {Algo::kBenchmark, Algo::kTwoPhase, Algo::kResolving};
  plan.trials = 3;
  auto rows = timing_table(plan);
  REQUIRE(rows.size() == 6);
  double m1 = 0, res = 0;
  for (const auto& r : rows) {
    CHECK(r.mean_wall_time_s >= 0.0);
    if (r.horizon != 1600) continue;
    if (r.algo == "M1") m1 = r.mean_wall_time_s;
    if (r.algo == "resolving-proxy") res = r.mean_wall_time_s;
  }
  CHECK(res > 5 * m1);
  CHECK(timing_to_csv(rows).rfind("T,algo,", 0) == 0);
  CHECK(timing_to_text(rows).find("resolving-proxy") != std::string::npos);
}
