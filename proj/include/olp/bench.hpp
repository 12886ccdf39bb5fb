// Experiment harness: plans, trial execution over a horizon grid,
// aggregation, growth-slope fits, timing tables and plot data.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "olp/algorithms.hpp"
#include "olp/distributions.hpp"
#include "olp/types.hpp"

namespace olp {

enum class Algo { kBenchmark, kTwoPhase, kLearnerAsDecider, kResolving };
/// "M1", "M2", "learner-as-decider", "resolving-proxy".
std::string to_string(Algo algo);
Algo algo_from_string(const std::string& s);

enum class TwoPhaseMode { kExperiment, kTheorem };

struct DistributionConfig {
  /// continuous-u1 | multi-secretary | beta | wide-uniform | finite
  std::string kind = "continuous-u1";
  std::size_t m = 1;
  std::size_t K = 5;  // finite only
  AtomLaw atom_law = AtomLaw::kUniform;
  std::string support_file;  // optional FiniteSupport JSON, finite only
  ResourceSpec resources;
};

struct ExperimentPlan {
  std::string name = "plan";
  DistributionConfig distribution;
  std::vector<Algo> algorithms{Algo::kBenchmark, Algo::kTwoPhase};
  std::vector<std::size_t> horizons;  // ascending
  std::size_t trials = 100;
  std::uint64_t seed = 1;

  TwoPhaseMode two_phase_mode = TwoPhaseMode::kExperiment;
  double theorem_gamma = 2.0;
  double theorem_mu = 0.5;
  double theorem_diam = 0.0;
  double theorem_constant = 1.0;
  double decider_mu = 0.5;         // learner-as-decider
  std::size_t resolve_every = 0;   // 0 picks ceil(sqrt(T))
  bool record_timing = false;

  std::string csv_path;   // per-trial CSV; empty skips
  std::string plot_dir;   // plot data directory; empty skips
  bool svg = false;
  std::size_t workers = 0;  // 0 reads OLP_WORKERS, else hardware threads

  /// Throws std::invalid_argument on an empty or unsorted grid, zero
  /// trials or an unknown distribution kind.
  void validate() const;
};

/// `points` horizons log-spaced on [lo, hi], rounded to integers.
std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi, std::size_t points);

/// The instance family of a plan: the distribution (finite supports drawn
/// from the plan seed), d drawn from the plan seed, and the bounds.
struct PlanInstance {
  DistributionSpec spec;
  Vector resources;
  BoundsSpec bounds;
  std::string dist_name;
};
PlanInstance build_instance(const ExperimentPlan& plan);

struct AggregateRow {
  std::string algo;
  std::string dist;
  std::size_t horizon = 0;
  std::size_t trials = 0;  // successful trials
  std::size_t failed = 0;
  double mean_regret = 0.0;
  double mean_violation = 0.0;
  double mean_rpv = 0.0;
  double std_rpv = 0.0;
  double normalized_rpv = 0.0;  // mean_rpv / mean_rpv at the first horizon
  std::optional<double> mean_wall_time_s;
};

struct PlanResult {
  std::vector<RunReport> reports;  // ordered by (T, trial, algorithm)
  std::vector<AggregateRow> rows;  // ordered by (algorithm, T)
  std::size_t failed_trials = 0;
  std::size_t total_trials = 0;
  std::vector<std::string> failures;  // one line per failed trial
  std::vector<std::string> policy_configs;  // resolved per-T settings
};

/// Runs every (T, trial) pair on a worker pool and aggregates. Trial k at
/// horizon T draws arrivals from derive_seed(seed, {T, k}); every algorithm
/// sees the same arrivals. Output is independent of the worker count.
/// A trial whose hindsight solve fails is excluded; more than 1% failed
/// trials throws std::runtime_error. Writes the CSV, a metadata JSON
/// and plot data when the plan names paths.
PlanResult run_plan(const ExperimentPlan& plan);

std::vector<AggregateRow> aggregate(const std::vector<RunReport>& reports,
                                    const std::vector<Algo>& order, std::size_t failed_per_horizon = 0);

std::string reports_to_csv(const std::vector<RunReport>& reports);
std::string rows_to_csv(const std::vector<AggregateRow>& rows);
/// Parses a per-trial CSV written by reports_to_csv.
std::vector<RunReport> reports_from_csv(const std::string& text);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of ln(mean r+v) against ln T. Needs at least four
/// rows; throws std::invalid_argument on a nonpositive mean.
LineFit fit_growth_slope(const std::vector<AggregateRow>& rows);
/// Fit of mean r+v against ln T (log-growth check).
LineFit fit_log_growth(const std::vector<AggregateRow>& rows);
/// Rows of one algorithm, in grid order.
std::vector<AggregateRow> rows_for(const std::vector<AggregateRow>& rows, const std::string& algo);

struct TimingRow {
  std::string algo;
  std::size_t horizon = 0;
  double mean_rpv = 0.0;
  double mean_wall_time_s = 0.0;
};
/// Runs the plan with timing on and returns per-(algo, T) means.
std::vector<TimingRow> timing_table(ExperimentPlan plan);
std::string timing_to_csv(const std::vector<TimingRow>& rows);
std::string timing_to_text(const std::vector<TimingRow>& rows);

/// Writes one long-format data file per distribution:
///   <dir>/<prefix>_<dist>.dat  with columns algo T normalized mean_rpv
/// plus <dir>/<prefix>_<dist>.svg when `svg` is set. Returns the paths.
std::vector<std::string> emit_plot_data(const std::vector<AggregateRow>& rows, const std::string& dir,
                                        const std::string& prefix, bool svg);
std::string render_svg(const std::vector<AggregateRow>& rows, const std::string& title);

/// Named experiment scenarios: continuous-1..4, finite-1..4, dilemma.
std::vector<std::string> scenario_names();
ExperimentPlan scenario_plan(const std::string& name);

/// Plan from a JSON document; absent keys keep their defaults.
ExperimentPlan plan_from_json(const std::string& text);
ExperimentPlan load_plan(const std::string& path);
std::string plan_to_json(const ExperimentPlan& plan);

/// Worker count: OLP_WORKERS when set and positive, else hardware threads.
std::size_t worker_count(std::size_t requested = 0);

}  // namespace olp
