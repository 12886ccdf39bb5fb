// olpbench: run experiment plans, named scenarios, timing tables and
// slope fits from the command line.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "olp/bench.hpp"

namespace {

struct Overrides {
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::size_t trials = 0;
  std::string csv;
  std::string plot_dir;
  bool svg = false;
};

void apply(const Overrides& o, olp::ExperimentPlan& plan) {
  if (o.has_seed) plan.seed = o.seed;
  if (o.trials) plan.trials = o.trials;
  if (!o.csv.empty()) plan.csv_path = o.csv;
  if (!o.plot_dir.empty()) plan.plot_dir = o.plot_dir;
  if (o.svg) plan.svg = true;
}

void print_rows(const std::vector<olp::AggregateRow>& rows) {
  std::printf("%-20s %-18s %8s %6s %12s %12s %12s %10s %10s\n", "algo", "dist", "T", "n", "regret",
              "violation", "r+v", "std", "normalized");
  for (const auto& r : rows) {
    std::printf("%-20s %-18s %8zu %6zu %12.4f %12.4f %12.4f %10.4f %10.4f\n", r.algo.c_str(), r.dist.c_str(),
                r.horizon, r.trials, r.mean_regret, r.mean_violation, r.mean_rpv, r.std_rpv, r.normalized_rpv);
  }
}

void print_slopes(const std::vector<olp::AggregateRow>& rows) {
  std::vector<std::string> algos;
  for (const auto& r : rows) {
    if (std::find(algos.begin(), algos.end(), r.algo) == algos.end()) algos.push_back(r.algo);
  }
  for (const auto& a : algos) {
    auto sub = olp::rows_for(rows, a);
    if (sub.size() < 4) {
      std::printf("slope %-20s  (need >= 4 horizons)\n", a.c_str());
      continue;
    }
    try {
      auto fit = olp::fit_growth_slope(sub);
      auto lg = olp::fit_log_growth(sub);
      std::printf("slope %-20s  log-log %.3f (R2 %.3f)   r+v vs ln T %.3f (R2 %.3f)\n", a.c_str(), fit.slope,
                  fit.r_squared, lg.slope, lg.r_squared);
    } catch (const std::exception& e) {
      std::printf("slope %-20s  %s\n", a.c_str(), e.what());
    }
  }
}

int report(const olp::ExperimentPlan& plan, const olp::PlanResult& result) {
  std::printf("plan %s: %zu horizons x %zu trials, seed %llu\n", plan.name.c_str(), plan.horizons.size(),
              plan.trials, static_cast<unsigned long long>(plan.seed));
  for (const auto& line : result.policy_configs) std::printf("  %s\n", line.c_str());
  print_rows(result.rows);
  print_slopes(result.rows);
  if (result.failed_trials) {
    std::printf("failed trials: %zu of %zu\n", result.failed_trials, result.total_trials);
    for (const auto& f : result.failures) std::printf("  %s\n", f.c_str());
  }
  if (!plan.csv_path.empty()) std::printf("wrote %s\n", plan.csv_path.c_str());
  return 0;
}

int run_theorem_sweep(const Overrides& o, double constant) {
  const std::vector<double> gammas{1.5, 2.0, 3.0};
  olp::ExperimentPlan base = olp::scenario_plan("dilemma");
  base.algorithms = {olp::Algo::kTwoPhase};
  base.horizons = olp::log_grid(1000, 100000, 5);
  base.trials = 20;
  base.two_phase_mode = olp::TwoPhaseMode::kTheorem;
  base.theorem_constant = constant;
  apply(o, base);
  const auto inst = olp::build_instance(base);
  std::printf("theorem-driven two-phase settings on %s, constant %.4g\n", inst.dist_name.c_str(), constant);
  for (double g : gammas) {
    olp::ErrorBoundSpec eb;
    eb.gamma = g;
    eb.mu = base.theorem_mu;
    bool admissible = true;
    std::printf("gamma %.2f\n", g);
    for (std::size_t T : base.horizons) {
      try {
        auto tp = olp::configure_two_phase_theorem(T, eb, inst.bounds, constant);
        std::printf("  T=%-7zu %s\n", T, tp.describe().c_str());
      } catch (const std::invalid_argument& e) {
        admissible = false;
        std::printf("  T=%-7zu inadmissible: %s\n", T, e.what());
      }
    }
    if (!admissible) continue;
    olp::ExperimentPlan plan = base;
    plan.name = "theorem-gamma-" + std::to_string(g).substr(0, 4);
    plan.theorem_gamma = g;
    if (!o.csv.empty()) plan.csv_path = o.csv + "." + plan.name + ".csv";
    auto result = olp::run_plan(plan);
    print_rows(result.rows);
    print_slopes(result.rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"olpbench: online linear programming experiments"};
  app.fallthrough();
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--seed", o.seed, "Override the master seed")->each([&](const std::string&) { o.has_seed = true; });
  app.add_option("--trials", o.trials, "Override trials per horizon");
  app.add_option("--csv", o.csv, "Per-trial CSV output path");
  app.add_option("--plot-dir", o.plot_dir, "Directory for plot data files");
  app.add_flag("--svg", o.svg, "Also render SVG charts into the plot directory");

  std::string config_path, scenario, csv_in;
  double constant = 0.05;

  auto* run = app.add_subcommand("run", "Run a plan from a JSON config");
  run->add_option("config", config_path, "Plan JSON")->required()->check(CLI::ExistingFile);

  auto* demo = app.add_subcommand("demo", "Run a named scenario");
  std::vector<std::string> names = olp::scenario_names();
  names.push_back("theorem-gamma");
  demo->add_option("scenario", scenario, "Scenario name")->required()->check(CLI::IsMember(names));
  demo->add_option("--constant", constant, "Exploration-length multiplier for theorem-gamma");

  auto* table = app.add_subcommand("table", "Timing table for a plan");
  table->add_option("config", config_path, "Plan JSON")->required()->check(CLI::ExistingFile);

  auto* slope = app.add_subcommand("slope", "Growth slopes from a per-trial CSV");
  slope->add_option("csv", csv_in, "Per-trial CSV")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto plan = olp::load_plan(config_path);
      apply(o, plan);
      return report(plan, olp::run_plan(plan));
    }
    if (*demo) {
      if (scenario == "theorem-gamma") return run_theorem_sweep(o, constant);
      auto plan = olp::scenario_plan(scenario);
      apply(o, plan);
      return report(plan, olp::run_plan(plan));
    }
    if (*table) {
      auto plan = olp::load_plan(config_path);
      apply(o, plan);
      auto rows = olp::timing_table(plan);
      std::fputs(olp::timing_to_text(rows).c_str(), stdout);
      if (!plan.csv_path.empty()) {
        std::ofstream out(plan.csv_path + ".timing.csv");
        out << olp::timing_to_csv(rows);
      }
      return 0;
    }
    if (*slope) {
      std::ifstream in(csv_in);
      std::stringstream buf;
      buf << in.rdbuf();
      auto reports = olp::reports_from_csv(buf.str());
      std::map<std::string, std::vector<olp::RunReport>> by_dist;
      for (auto& r : reports) by_dist[r.dist].push_back(std::move(r));
      for (const auto& [dist, group] : by_dist) {
        auto rows = olp::aggregate(group, {});
        std::printf("%s\n", dist.c_str());
        print_rows(rows);
        print_slopes(rows);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "olpbench: %s\n", e.what());
    return 1;
  }
  return 0;
}
