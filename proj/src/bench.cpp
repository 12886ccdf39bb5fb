#include "olp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "olp/hindsight.hpp"
#include <json.hpp>

namespace olp {

std::string to_string(Algo algo) {
  switch (algo) {
    case Algo::kBenchmark: return "M1";
    case Algo::kTwoPhase: return "M2";
    case Algo::kLearnerAsDecider: return "learner-as-decider";
    case Algo::kResolving: return "resolving-proxy";
  }
  return "unknown";
}

Algo algo_from_string(const std::string& s) {
  if (s == "M1" || s == "benchmark") return Algo::kBenchmark;
  if (s == "M2" || s == "two-phase") return Algo::kTwoPhase;
  if (s == "learner-as-decider") return Algo::kLearnerAsDecider;
  if (s == "resolving-proxy" || s == "resolving") return Algo::kResolving;
  throw std::invalid_argument("unknown algorithm: " + s);
}

void ExperimentPlan::validate() const {
  if (horizons.empty()) throw std::invalid_argument("plan: empty horizon grid");
  if (!std::is_sorted(horizons.begin(), horizons.end()) ||
      std::adjacent_find(horizons.begin(), horizons.end()) != horizons.end()) {
    throw std::invalid_argument("plan: horizon grid must be strictly ascending");
  }
  if (horizons.front() < 2) throw std::invalid_argument("plan: horizons must be >= 2");
  if (trials < 1) throw std::invalid_argument("plan: trials must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("plan: no algorithms");
  static const char* kinds[] = {"continuous-u1", "multi-secretary", "beta", "wide-uniform", "finite"};
  if (std::find(std::begin(kinds), std::end(kinds), distribution.kind) == std::end(kinds)) {
    throw std::invalid_argument("plan: unknown distribution kind " + distribution.kind);
  }
}

std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi, std::size_t points) {
  if (points < 1 || lo < 1 || hi < lo) throw std::invalid_argument("log_grid: bad arguments");
  std::vector<std::size_t> grid;
  if (points == 1) return {lo};
  const double a = std::log10(static_cast<double>(lo));
  const double b = std::log10(static_cast<double>(hi));
  for (std::size_t i = 0; i < points; ++i) {
    double v = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    auto T = static_cast<std::size_t>(std::llround(v));
    if (grid.empty() || T > grid.back()) grid.push_back(T);
  }
  return grid;
}

PlanInstance build_instance(const ExperimentPlan& plan) {
  plan.validate();
  const auto& dc = plan.distribution;
  PlanInstance inst;
  if (dc.kind == "continuous-u1") {
    inst.spec = ContinuousU1{dc.m};
  } else if (dc.kind == "multi-secretary") {
    inst.spec = MultiSecretary{};
  } else if (dc.kind == "beta") {
    inst.spec = BetaCont{dc.m};
  } else if (dc.kind == "wide-uniform") {
    inst.spec = WideUniform{dc.m};
  } else {
    Finite f;
    if (!dc.support_file.empty()) {
      std::ifstream in(dc.support_file);
      if (!in) throw std::runtime_error("cannot read support file " + dc.support_file);
      std::stringstream buf;
      buf << in.rdbuf();
      f.support = finite_support_from_json(buf.str());
      f.recipe = "file";
    } else {
      RandomStream atoms(plan.seed, Stream::kAtoms);
      RandomStream probs(plan.seed, Stream::kProbabilities);
      f.support = finite_support_build(dc.m, dc.K, dc.atom_law, atoms, probs);
      f.recipe = to_string(dc.atom_law);
    }
    inst.spec = std::move(f);
  }
  RandomStream rng(plan.seed, Stream::kResources);
  inst.resources = sample_resources(dc.resources, dimension(inst.spec), rng);
  inst.bounds = derive_bounds(inst.spec, dc.resources);
  inst.dist_name = distribution_name(inst.spec);
  return inst;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct TrialOutcome {
  bool ok = true;
  std::string failure;
  std::vector<RunReport> reports;
};

TwoPhaseConfig two_phase_for(const ExperimentPlan& plan, const PlanInstance& inst, std::size_t T) {
  if (plan.two_phase_mode == TwoPhaseMode::kTheorem) {
    ErrorBoundSpec eb;
    eb.gamma = plan.theorem_gamma;
    eb.mu = plan.theorem_mu;
    eb.diam_ystar = plan.theorem_diam;
    return configure_two_phase_theorem(T, eb, inst.bounds, plan.theorem_constant);
  }
  const bool finite = std::holds_alternative<Finite>(inst.spec);
  return configure_two_phase_experiment(T, finite ? SupportSetting::kFinite : SupportSetting::kContinuous);
}

TrialOutcome run_trial(const ExperimentPlan& plan, const PlanInstance& inst, std::size_t grid_index,
                       const TwoPhaseConfig* tp, std::size_t k) {
  const std::size_t T = plan.horizons[grid_index];
  TrialOutcome out;
  const auto start = Clock::now();
  MarketConfig config;
  config.horizon = T;
  config.m = inst.resources.size();
  config.resources = inst.resources;
  config.seed = derive_seed(plan.seed, {T, k});
  const ArrivalSequence arrivals = generate_arrivals(inst.spec, config);
  const Vector budget = config.budget();
  OfflineSolution hindsight;
  try {
    hindsight = solve_hindsight(arrivals, budget);
  } catch (const SolverError& e) {
    out.ok = false;
    out.failure = "T=" + std::to_string(T) + " trial=" + std::to_string(k) + ": " + e.what();
    return out;
  }
  const double setup_time = seconds_since(start);
  const std::size_t m = config.m;

  for (Algo algo : plan.algorithms) {
    RunReport report;
    report.trial_id = grid_index * plan.trials + k;
    report.algo = to_string(algo);
    report.dist = inst.dist_name;
    report.horizon = T;
    report.m = m;
    report.seed = config.seed;
    report.hindsight_value = hindsight.value;
    const auto policy_start = Clock::now();
    DecisionTrace trace;
    try {
      switch (algo) {
        case Algo::kBenchmark:
          trace = run_benchmark_subgradient(arrivals, inst.resources,
                                            ConstantStep{benchmark_stepsize(inst.bounds, T)},
                                            DualPrice::zeros(m))
                      .trace;
          break;
        case Algo::kTwoPhase:
          trace = run_two_phase(arrivals, inst.resources, inst.bounds, *tp).trace;
          report.exploration_length = tp->exploration_length;
          break;
        case Algo::kLearnerAsDecider:
          trace = run_learner_as_decider(arrivals, inst.resources, plan.decider_mu).trace;
          break;
        case Algo::kResolving: {
          const std::size_t every = plan.resolve_every ? plan.resolve_every : default_resolve_interval(T);
          trace = run_resolving_baseline(arrivals, inst.resources, every).trace;
          break;
        }
      }
    } catch (const SolverError& e) {
      out.ok = false;
      out.failure = "T=" + std::to_string(T) + " trial=" + std::to_string(k) + " " + report.algo + ": " + e.what();
      return out;
    }
    const double policy_time = seconds_since(policy_start);
    if (plan.record_timing) report.wall_time_s = policy_time;
    report.total_time_s = setup_time + policy_time;
    report.regret = regret(trace, hindsight.value);
    report.violation = violation(trace, budget);
    out.reports.push_back(std::move(report));
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

std::size_t worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OLP_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

PlanResult run_plan(const ExperimentPlan& plan) {
  const PlanInstance inst = build_instance(plan);
  const bool needs_two_phase =
      std::find(plan.algorithms.begin(), plan.algorithms.end(), Algo::kTwoPhase) != plan.algorithms.end();
  std::vector<TwoPhaseConfig> configs;
  PlanResult result;
  for (std::size_t T : plan.horizons) {
    if (needs_two_phase) {
      configs.push_back(two_phase_for(plan, inst, T));
      std::string line = "T=" + std::to_string(T) + " " + configs.back().describe();
      if (configs.back().learner == LearnerKind::kAssg) {
        line += " " + default_budget_assg(configs.back().exploration_length, T, inst.bounds).describe();
      }
      result.policy_configs.push_back(line);
    }
    if (std::find(plan.algorithms.begin(), plan.algorithms.end(), Algo::kBenchmark) != plan.algorithms.end()) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "T=%zu M1 alpha=%.6g", T, benchmark_stepsize(inst.bounds, T));
      result.policy_configs.push_back(buf);
    }
  }

  const std::size_t jobs = plan.horizons.size() * plan.trials;
  std::vector<TrialOutcome> outcomes(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const std::size_t g = j / plan.trials;
      const std::size_t k = j % plan.trials;
      outcomes[j] = run_trial(plan, inst, g, needs_two_phase ? &configs[g] : nullptr, k);
    }
  };
  const std::size_t n_workers = std::min(worker_count(plan.workers), jobs);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<std::size_t> failed_per_horizon(plan.horizons.size(), 0);
  for (std::size_t j = 0; j < jobs; ++j) {
    auto& o = outcomes[j];
    if (!o.ok) {
      ++result.failed_trials;
      ++failed_per_horizon[j / plan.trials];
      result.failures.push_back(o.failure);
      continue;
    }
    for (auto& r : o.reports) result.reports.push_back(std::move(r));
  }
  result.total_trials = jobs;
  if (static_cast<double>(result.failed_trials) > 0.01 * static_cast<double>(jobs)) {
    throw std::runtime_error("plan " + plan.name + ": " + std::to_string(result.failed_trials) + " of " +
                             std::to_string(jobs) + " trials failed");
  }
  result.rows = aggregate(result.reports, plan.algorithms);
  for (auto& row : result.rows) {
    auto it = std::find(plan.horizons.begin(), plan.horizons.end(), row.horizon);
    row.failed = failed_per_horizon[static_cast<std::size_t>(it - plan.horizons.begin())];
  }

  if (!plan.csv_path.empty()) {
    write_file(plan.csv_path, reports_to_csv(result.reports));
    nlohmann::json meta;
    meta["plan"] = nlohmann::json::parse(plan_to_json(plan));
    meta["distribution"] = inst.dist_name;
    meta["resources"] = inst.resources;
    meta["bounds"] = {{"request", inst.bounds.request_bound},
                      {"reward", inst.bounds.reward_bound},
                      {"resource_lower", inst.bounds.resource_lower},
                      {"resource_upper", inst.bounds.resource_upper},
                      {"high_probability_envelope", inst.bounds.high_probability_envelope}};
    if (const auto* f = std::get_if<Finite>(&inst.spec)) {
      meta["support"] = nlohmann::json::parse(finite_support_to_json(f->support));
    }
    meta["log_base"] = "natural";
    meta["resolving_baseline"] = "proxy: periodic LP re-solve, not the published LP-based methods";
    meta["policy_configs"] = result.policy_configs;
    meta["failed_trials"] = result.failed_trials;
    meta["total_trials"] = jobs;
    meta["failures"] = result.failures;
    write_file(plan.csv_path + ".meta.json", meta.dump(2) + "\n");
  }
  if (!plan.plot_dir.empty()) emit_plot_data(result.rows, plan.plot_dir, plan.name, plan.svg);
  return result;
}

std::vector<AggregateRow> aggregate(const std::vector<RunReport>& reports,
                                    const std::vector<Algo>& order, std::size_t failed_per_horizon) {
  std::vector<std::string> names;
  for (Algo a : order) names.push_back(to_string(a));
  for (const auto& r : reports) {
    if (std::find(names.begin(), names.end(), r.algo) == names.end()) names.push_back(r.algo);
  }
  std::vector<AggregateRow> rows;
  for (const auto& name : names) {
    std::map<std::size_t, std::vector<const RunReport*>> by_T;
    for (const auto& r : reports) {
      if (r.algo == name) by_T[r.horizon].push_back(&r);
    }
    double first = 0.0;
    for (auto& [T, group] : by_T) {
      // Sort by trial so sums do not depend on completion order.
      std::sort(group.begin(), group.end(),
                [](const RunReport* a, const RunReport* b) { return a->trial_id < b->trial_id; });
      AggregateRow row;
      row.algo = name;
      row.dist = group.front()->dist;
      row.horizon = T;
      row.trials = group.size();
      row.failed = failed_per_horizon;
      long double sr = 0, sv = 0, st = 0;
      bool timed = true;
      for (const auto* r : group) {
        sr += r->regret;
        sv += r->violation;
        if (r->wall_time_s) {
          st += *r->wall_time_s;
        } else {
          timed = false;
        }
      }
      const auto n = static_cast<long double>(group.size());
      row.mean_regret = static_cast<double>(sr / n);
      row.mean_violation = static_cast<double>(sv / n);
      row.mean_rpv = static_cast<double>((sr + sv) / n);
      long double ss = 0;
      for (const auto* r : group) {
        const long double dev = static_cast<long double>(r->regret) + r->violation - (sr + sv) / n;
        ss += dev * dev;
      }
      row.std_rpv = group.size() > 1 ? static_cast<double>(std::sqrt(ss / (n - 1))) : 0.0;
      if (timed) row.mean_wall_time_s = static_cast<double>(st / n);
      if (rows.empty() || rows.back().algo != name) first = row.mean_rpv;
      row.normalized_rpv = row.mean_rpv / first;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string reports_to_csv(const std::vector<RunReport>& reports) {
  std::string out = RunReport::csv_header() + "\n";
  for (const auto& r : reports) out += r.csv_row() + "\n";
  return out;
}

std::string rows_to_csv(const std::vector<AggregateRow>& rows) {
  std::string out =
      "algo,dist,T,trials,failed,mean_regret,mean_violation,mean_r_plus_v,std_r_plus_v,normalized,"
      "mean_wall_time_s\n";
  char buf[512];
  for (const auto& r : rows) {
    std::string wall = "NA";
    if (r.mean_wall_time_s) {
      char t[32];
      std::snprintf(t, sizeof t, "%.6g", *r.mean_wall_time_s);
      wall = t;
    }
    std::snprintf(buf, sizeof buf, "%s,%s,%zu,%zu,%zu,%.12g,%.12g,%.12g,%.12g,%.12g,%s\n", r.algo.c_str(),
                  r.dist.c_str(), r.horizon, r.trials, r.failed, r.mean_regret, r.mean_violation, r.mean_rpv,
                  r.std_rpv, r.normalized_rpv, wall.c_str());
    out += buf;
  }
  return out;
}

std::vector<RunReport> reports_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split(line, ',');
  auto column = [&](const char* name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::invalid_argument(std::string("CSV lacks column ") + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_id = column("trial_id"), c_algo = column("algo"), c_dist = column("dist"),
                    c_T = column("T"), c_m = column("m"), c_seed = column("seed"), c_r = column("regret"),
                    c_v = column("violation"), c_h = column("hindsight"), c_te = column("T_e"),
                    c_w = column("wall_time_s");
  std::vector<RunReport> reports;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != header.size()) throw std::invalid_argument("CSV row has wrong field count: " + line);
    RunReport r;
    r.trial_id = std::stoull(f[c_id]);
    r.algo = f[c_algo];
    r.dist = f[c_dist];
    r.horizon = std::stoull(f[c_T]);
    r.m = std::stoull(f[c_m]);
    r.seed = std::stoull(f[c_seed]);
    r.regret = std::stod(f[c_r]);
    r.violation = std::stod(f[c_v]);
    r.hindsight_value = std::stod(f[c_h]);
    r.exploration_length = std::stoull(f[c_te]);
    if (f[c_w] != "NA") r.wall_time_s = std::stod(f[c_w]);
    reports.push_back(std::move(r));
  }
  return reports;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_line: x values are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0 ? 1.0 : sxy * sxy / (sxx * syy);
  return fit;
}

LineFit fit_growth_slope(const std::vector<AggregateRow>& rows) {
  if (rows.size() < 4) throw std::invalid_argument("fit_growth_slope: need at least 4 grid points");
  Vector x, y;
  for (const auto& r : rows) {
    if (!(r.mean_rpv > 0)) throw std::invalid_argument("fit_growth_slope: nonpositive mean r+v");
    x.push_back(std::log(static_cast<double>(r.horizon)));
    y.push_back(std::log(r.mean_rpv));
  }
  return fit_line(x, y);
}

LineFit fit_log_growth(const std::vector<AggregateRow>& rows) {
  Vector x, y;
  for (const auto& r : rows) {
    x.push_back(std::log(static_cast<double>(r.horizon)));
    y.push_back(r.mean_rpv);
  }
  return fit_line(x, y);
}

std::vector<AggregateRow> rows_for(const std::vector<AggregateRow>& rows, const std::string& algo) {
  std::vector<AggregateRow> out;
  for (const auto& r : rows) {
    if (r.algo == algo) out.push_back(r);
  }
  return out;
}

std::vector<TimingRow> timing_table(ExperimentPlan plan) {
  plan.record_timing = true;
  auto result = run_plan(plan);
  std::vector<TimingRow> out;
  for (const auto& r : result.rows) out.push_back({r.algo, r.horizon, r.mean_rpv, r.mean_wall_time_s.value_or(0.0)});
  std::stable_sort(out.begin(), out.end(),
                   [](const TimingRow& a, const TimingRow& b) { return a.horizon < b.horizon; });
  return out;
}

std::string timing_to_csv(const std::vector<TimingRow>& rows) {
  std::string out = "T,algo,mean_r_plus_v,mean_wall_time_s\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%s,%.6g,%.6g\n", r.horizon, r.algo.c_str(), r.mean_rpv, r.mean_wall_time_s);
    out += buf;
  }
  return out;
}

std::string timing_to_text(const std::vector<TimingRow>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s  %-18s  %14s  %14s\n", "T", "algorithm", "avg r+v", "avg time (s)");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-8zu  %-18s  %14.3f  %14.6f\n", r.horizon, r.algo.c_str(), r.mean_rpv,
                  r.mean_wall_time_s);
    out += buf;
  }
  return out;
}

std::vector<std::string> emit_plot_data(const std::vector<AggregateRow>& rows, const std::string& dir,
                                        const std::string& prefix, bool svg) {
  std::map<std::string, std::vector<AggregateRow>> by_dist;
  for (const auto& r : rows) by_dist[r.dist].push_back(r);
  std::vector<std::string> paths;
  for (const auto& [dist, group] : by_dist) {
    std::string base = (std::filesystem::path(dir) / (prefix + "_" + dist)).string();
    std::string text = "# algo T normalized mean_r_plus_v\n";
    char buf[256];
    for (const auto& r : group) {
      std::snprintf(buf, sizeof buf, "%s %zu %.10g %.10g\n", r.algo.c_str(), r.horizon, r.normalized_rpv,
                    r.mean_rpv);
      text += buf;
    }
    write_file(base + ".dat", text);
    paths.push_back(base + ".dat");
    if (svg) {
      write_file(base + ".svg", render_svg(group, prefix + " / " + dist));
      paths.push_back(base + ".svg");
    }
  }
  return paths;
}

std::string render_svg(const std::vector<AggregateRow>& rows, const std::string& title) {
  const double W = 640, H = 420, left = 70, right = 170, top = 40, bottom = 50;
  double xmin = 1e300, xmax = -1e300, ymax = 0;
  for (const auto& r : rows) {
    const double x = std::log10(static_cast<double>(r.horizon));
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymax = std::max(ymax, r.normalized_rpv);
  }
  if (xmax <= xmin) xmax = xmin + 1;
  ymax = ymax > 0 ? ymax * 1.05 : 1.0;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (W - left - right); };
  auto py = [&](double y) { return H - bottom - y / ymax * (H - top - bottom); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream s;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" font-family=\"sans-serif\" "
                "font-size=\"12\">\n",
                W, H);
  s << buf << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title << "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                left, H - bottom, W - right, H - bottom, left, top, left, H - bottom);
  s << buf;
  for (int e = static_cast<int>(std::ceil(xmin - 1e-9)); e <= static_cast<int>(std::floor(xmax + 1e-9)); ++e) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">1e%d</text>\n", px(e),
                  H - bottom + 18, e);
    s << buf;
  }
  for (int i = 0; i <= 4; ++i) {
    const double y = ymax * i / 4;
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.3g</text>\n", left - 6,
                  py(y) + 4, y);
    s << buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">T</text>\n",
                (left + W - right) / 2, H - 12);
  s << buf;
  std::vector<std::string> algos;
  for (const auto& r : rows) {
    if (std::find(algos.begin(), algos.end(), r.algo) == algos.end()) algos.push_back(r.algo);
  }
  for (std::size_t a = 0; a < algos.size(); ++a) {
    const char* color = colors[a % 5];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& r : rows) {
      if (r.algo != algos[a]) continue;
      std::snprintf(buf, sizeof buf, "%.1f,%.1f ", px(std::log10(static_cast<double>(r.horizon))),
                    py(r.normalized_rpv));
      s << buf;
    }
    s << "\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" stroke-width=\"2\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\">%s</text>\n",
                  W - right + 15, top + 20.0 * a, W - right + 40, top + 20.0 * a, color, W - right + 46,
                  top + 20.0 * a + 4, algos[a].c_str());
    s << buf;
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::string> scenario_names() {
  return {"continuous-1", "continuous-2", "continuous-3", "continuous-4", "finite-1",
          "finite-2",     "finite-3",     "finite-4",     "dilemma"};
}

ExperimentPlan scenario_plan(const std::string& name) {
  ExperimentPlan plan;
  plan.name = name;
  auto& dc = plan.distribution;
  dc.resources = {ResourceLaw::kUniform, 0.5};
  const auto continuous_grid = log_grid(100, 100000, 10);
  const auto finite_grid = log_grid(1000, 100000, 10);
  plan.horizons = continuous_grid;
  if (name == "continuous-1") {
    dc.kind = "continuous-u1";
    dc.m = 1;
  } else if (name == "continuous-2") {
    dc.kind = "multi-secretary";
    dc.m = 1;
  } else if (name == "continuous-3") {
    dc.kind = "beta";
    dc.m = 5;
  } else if (name == "continuous-4") {
    dc.kind = "wide-uniform";
    dc.m = 5;
  } else if (name == "finite-1") {
    dc = {"finite", 2, 5, AtomLaw::kUniform, "", {ResourceLaw::kUniform, 0.5}};
    plan.horizons = finite_grid;
  } else if (name == "finite-2") {
    dc = {"finite", 5, 5, AtomLaw::kFoldedNormal, "", {ResourceLaw::kFoldedNormal, 0.5}};
    plan.horizons = finite_grid;
  } else if (name == "finite-3") {
    dc = {"finite", 5, 10, AtomLaw::kExponential, "", {ResourceLaw::kExponential, 0.5}};
    plan.horizons = finite_grid;
  } else if (name == "finite-4") {
    dc = {"finite", 2, 10, AtomLaw::kGamma, "", {ResourceLaw::kUniform, 0.5}};
    plan.horizons = finite_grid;
  } else if (name == "dilemma") {
    dc.kind = "multi-secretary";
    dc.m = 1;
    dc.resources = {ResourceLaw::kFixed, 0.5};
    plan.algorithms = {Algo::kBenchmark, Algo::kTwoPhase, Algo::kLearnerAsDecider};
  } else {
    throw std::invalid_argument("unknown scenario: " + name);
  }
  return plan;
}

}  // namespace olp
