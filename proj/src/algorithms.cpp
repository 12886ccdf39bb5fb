#include "olp/algorithms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "olp/hindsight.hpp"

namespace olp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// One decide-then-update step of the dual subgradient method, in place.
inline double subgradient_step(Vector& y, ArrivalRef arr, std::span<const double> d, double alpha) {
  const std::size_t m = y.size();
  double price = 0.0;
  for (std::size_t i = 0; i < m; ++i) price += arr.request[i] * y[i];
  const double x = arr.reward >= price ? 1.0 : 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double v = y[i] - alpha * (d[i] - arr.request[i] * x);
    y[i] = v > 0.0 ? v : 0.0;
  }
  return x;
}

void check_resources(const ArrivalSequence& arrivals, std::span<const double> resources) {
  if (resources.size() != arrivals.dimension()) throw std::invalid_argument("resource vector has wrong length");
}

}  // namespace

void validate(const StepsizeSchedule& schedule) {
  const double rate = std::visit(Overloaded{
                                     [](const ConstantStep& s) { return s.alpha; },
                                     [](const InverseTimeStep& s) { return s.mu; },
                                     [](const InverseTimeShiftStep& s) { return s.mu; },
                                 },
                                 schedule);
  if (!(rate > 0) || !std::isfinite(rate)) throw std::invalid_argument("stepsize parameter must be positive");
}

double step_at(const StepsizeSchedule& schedule, std::size_t t) {
  return std::visit(Overloaded{
                        [](const ConstantStep& s) { return s.alpha; },
                        [t](const InverseTimeStep& s) { return 1.0 / (s.mu * static_cast<double>(t)); },
                        [t](const InverseTimeShiftStep& s) { return 1.0 / (s.mu * static_cast<double>(t + 1)); },
                    },
                    schedule);
}

std::string describe(const StepsizeSchedule& schedule) {
  char buf[64];
  std::visit(Overloaded{
                 [&](const ConstantStep& s) { std::snprintf(buf, sizeof buf, "constant(%.6g)", s.alpha); },
                 [&](const InverseTimeStep& s) { std::snprintf(buf, sizeof buf, "1/(%.6g t)", s.mu); },
                 [&](const InverseTimeShiftStep& s) { std::snprintf(buf, sizeof buf, "1/(%.6g (t+1))", s.mu); },
             },
             schedule);
  return buf;
}

double benchmark_stepsize(const BoundsSpec& bounds, std::size_t horizon) {
  bounds.validate();
  if (horizon < 1) throw std::invalid_argument("benchmark_stepsize: T must be >= 1");
  const double spread = bounds.request_bound + bounds.resource_upper;
  const double scale = 2.0 * bounds.reward_bound /
                       (static_cast<double>(bounds.m) * bounds.resource_lower * spread * spread);
  return std::sqrt(scale) / std::sqrt(static_cast<double>(horizon));
}

PolicyResult run_benchmark_subgradient(const ArrivalSequence& arrivals,
                                       std::span<const double> resources,
                                       const StepsizeSchedule& schedule,
                                       const DualPrice& y_init, bool keep_log) {
  validate(schedule);
  check_resources(arrivals, resources);
  if (y_init.size() != arrivals.dimension()) throw std::invalid_argument("initial price has wrong length");
  const std::size_t T = arrivals.size();
  PolicyResult result{DecisionTrace(arrivals.dimension(), T), {}, {}};
  Vector y = y_init.values();
  const auto* constant = std::get_if<ConstantStep>(&schedule);
  if (keep_log) result.log.record(1, y);
  for (std::size_t t = 0; t < T; ++t) {
    const double alpha = constant ? constant->alpha : step_at(schedule, t + 1);
    auto arr = arrivals[t];
    result.trace.push(arr, subgradient_step(y, arr, resources, alpha));
    if (keep_log) result.log.maybe_record(t + 2, y);
  }
  if (keep_log && !DualLog::is_log_point(T + 1)) result.log.record(T + 1, y);
  result.final_price = DualPrice(std::move(y));
  return result;
}

PolicyResult run_learner_as_decider(const ArrivalSequence& arrivals,
                                    std::span<const double> resources, double mu, bool keep_log) {
  return run_benchmark_subgradient(arrivals, resources, InverseTimeStep{mu},
                                   DualPrice::zeros(arrivals.dimension()), keep_log);
}

std::string to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kInverseTime: return "inverse-time";
    case LearnerKind::kAssg: return "assg";
    case LearnerKind::kRassg: return "rassg";
  }
  return "unknown";
}

void TwoPhaseConfig::validate(std::size_t horizon) const {
  if (exploration_length < 1 || exploration_length >= horizon) {
    throw std::invalid_argument("two-phase: need 1 <= T_e < T");
  }
  if (!(alpha_e > 0) || !(alpha_p > 0)) throw std::invalid_argument("two-phase: stepsizes must be positive");
}

std::string TwoPhaseConfig::describe() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "T_e=%zu alpha_e=%.6g alpha_p=%.6g learner=%s", exploration_length,
                alpha_e, alpha_p, to_string(learner).c_str());
  return buf;
}

TwoPhaseConfig configure_two_phase_theorem(std::size_t horizon, const ErrorBoundSpec& eb,
                                           const BoundsSpec& bounds, double constant) {
  eb.validate();
  bounds.validate();
  if (horizon < 2) throw std::invalid_argument("two-phase theorem config: T must be >= 2");
  if (!(constant > 0)) throw std::invalid_argument("two-phase theorem config: constant must be positive");
  const double T = static_cast<double>(horizon);
  const double m = static_cast<double>(bounds.m);
  const double spread = bounds.request_bound + bounds.resource_upper;
  TwoPhaseConfig tp;
  tp.learner = eb.gamma > 1.0 ? LearnerKind::kInverseTime : LearnerKind::kAssg;
  tp.inverse_time_mu = eb.mu;
  if (eb.diam_ystar == 0.0) {
    const double g = eb.gamma;
    const double lnT = std::log(T);
    tp.exploration_length =
        static_cast<std::size_t>(std::ceil(constant * std::pow(T, (2 * g - 2) / (2 * g - 1)) * lnT * lnT));
    tp.alpha_e = std::pow(T, -(g - 1) / (2 * g - 1)) / lnT;
    tp.alpha_p = std::pow(T, -g / (2 * g - 1));
  } else {
    const double D = eb.diam_ystar;
    const double base = 2.0 * bounds.reward_bound / (m * spread * spread * bounds.resource_lower);
    tp.exploration_length = static_cast<std::size_t>(std::ceil(2 * D / (2 * D + 1) * T - 1e-9));
    tp.alpha_e = std::sqrt(base * (2 * D + 1) / (2 * D * T));
    tp.alpha_p = std::sqrt(base * 2 * D * (2 * D + 1) / T);
  }
  const double admissible = 2.0 * bounds.resource_lower / (3.0 * m * spread * spread);
  if (tp.alpha_e > admissible) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "two-phase theorem config: alpha_e = %.6g exceeds 2 d_lo / (3 m (a + d_hi)^2) = %.6g; "
                  "T = %zu is too small",
                  tp.alpha_e, admissible, horizon);
    throw std::invalid_argument(buf);
  }
  if (tp.exploration_length >= horizon) {
    throw std::invalid_argument("two-phase theorem config: T_e >= T; T is too small for this constant");
  }
  return tp;
}

TwoPhaseConfig configure_two_phase_experiment(std::size_t horizon, SupportSetting setting) {
  if (horizon < 2) throw std::invalid_argument("two-phase experiment config: T must be >= 2");
  const double T = static_cast<double>(horizon);
  TwoPhaseConfig tp;
  if (setting == SupportSetting::kContinuous) {
    tp.exploration_length = static_cast<std::size_t>(std::ceil(std::pow(T, 2.0 / 3.0) - 1e-9));
    tp.alpha_e = std::pow(T, -1.0 / 3.0);
    tp.alpha_p = std::pow(T, -2.0 / 3.0);
    tp.learner = LearnerKind::kInverseTime;
    tp.inverse_time_mu = 1.0;
  } else {
    tp.exploration_length = static_cast<std::size_t>(std::ceil(50.0 * std::log(T)));
    tp.alpha_e = 1.0 / std::sqrt(T);
    tp.alpha_p = 1.0 / T;
    tp.learner = LearnerKind::kAssg;
  }
  tp.exploration_length = std::min(tp.exploration_length, horizon - 1);
  return tp;
}

AssgConfig default_budget_assg(std::size_t budget, std::size_t horizon, const BoundsSpec& bounds) {
  const double G = bounds.subgradient_bound();
  const double R = bounds.dual_radius();
  const double target = std::pow(static_cast<double>(horizon), -0.25);
  return AssgConfig::from_budget(budget, target, G * R, 2.0 * R, 1.0, 1.0, G, R);
}

std::unique_ptr<DualLearner> make_learner(const TwoPhaseConfig& tp, std::size_t horizon,
                                          std::span<const double> resources,
                                          const BoundsSpec& bounds) {
  Vector d(resources.begin(), resources.end());
  Vector y0(d.size(), 0.0);
  switch (tp.learner) {
    case LearnerKind::kInverseTime:
      return std::make_unique<InverseTimeLearner>(std::move(d), tp.inverse_time_mu);
    case LearnerKind::kAssg: {
      AssgConfig cfg = tp.assg ? *tp.assg : default_budget_assg(tp.exploration_length, horizon, bounds);
      return std::make_unique<StagedLearner>(cfg, std::move(y0), std::move(d));
    }
    case LearnerKind::kRassg: {
      RassgConfig cfg;
      if (tp.rassg) {
        cfg = *tp.rassg;
      } else {
        cfg.first = default_budget_assg(tp.exploration_length, horizon, bounds);
      }
      return std::make_unique<StagedLearner>(cfg, std::move(y0), std::move(d));
    }
  }
  throw std::invalid_argument("unknown learner kind");
}

TwoPhaseResult run_two_phase(const ArrivalSequence& arrivals, std::span<const double> resources,
                             const BoundsSpec& bounds, const TwoPhaseConfig& tp, bool keep_log) {
  auto learner = make_learner(tp, arrivals.size(), resources, bounds);
  return run_two_phase(arrivals, resources, bounds, tp, *learner, keep_log);
}

TwoPhaseResult run_two_phase(const ArrivalSequence& arrivals, std::span<const double> resources,
                             const BoundsSpec& bounds, const TwoPhaseConfig& tp,
                             DualLearner& learner, bool keep_log) {
  check_resources(arrivals, resources);
  const std::size_t T = arrivals.size();
  tp.validate(T);
  const std::size_t Te = tp.exploration_length;
  TwoPhaseResult result{DecisionTrace(arrivals.dimension(), T), {}, {}, {}, learner.describe()};
  Vector y(arrivals.dimension(), 0.0);
  if (keep_log) result.log.record(1, y);
  for (std::size_t t = 0; t < Te; ++t) {
    auto arr = arrivals[t];
    result.trace.push(arr, subgradient_step(y, arr, resources, tp.alpha_e));
    learner.observe(arr);
    if (keep_log) result.log.maybe_record(t + 2, y);
  }
  result.trace.mark_phase_boundary();
  result.learned_price = project_ball_orthant(learner.output(), bounds.dual_radius());
  y = result.learned_price.values();
  if (keep_log) result.log.record(Te + 1, y);
  for (std::size_t t = Te; t < T; ++t) {
    auto arr = arrivals[t];
    result.trace.push(arr, subgradient_step(y, arr, resources, tp.alpha_p));
    if (keep_log) result.log.maybe_record(t + 2, y);
  }
  if (keep_log && !DualLog::is_log_point(T + 1)) result.log.record(T + 1, y);
  result.final_price = DualPrice(std::move(y));
  return result;
}

std::size_t default_resolve_interval(std::size_t horizon) {
  return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(horizon))));
}

ResolvingResult run_resolving_baseline(const ArrivalSequence& arrivals,
                                       std::span<const double> resources,
                                       std::size_t resolve_every) {
  check_resources(arrivals, resources);
  if (resolve_every < 1) throw std::invalid_argument("resolving baseline: resolve_every must be >= 1");
  const std::size_t T = arrivals.size();
  const std::size_t m = arrivals.dimension();
  ResolvingResult result{DecisionTrace(m, T), DualPrice::zeros(m), 0, false};
  Vector y(m, 0.0), remaining(m);
  ArrivalSequence seen(m);
  seen.reserve(T);
  for (std::size_t t = 0; t < T; ++t) {
    auto arr = arrivals[t];
    seen.push_back(arr.reward, arr.request);
    if (t % resolve_every == 0) {
      const double left = static_cast<double>(T - t);
      const auto& used = result.trace.consumption();
      bool feasible = true;
      for (std::size_t i = 0; i < m; ++i) {
        remaining[i] = (static_cast<double>(T) * resources[i] - used[i]) / left * static_cast<double>(t + 1);
        feasible = feasible && remaining[i] >= 0.0;
      }
      if (feasible) {
        y = solve_hindsight(seen, remaining).y;
        ++result.resolves;
      } else {
        result.infeasible_flag = true;
      }
    }
    result.trace.push(arr, decide(y, arr));
  }
  result.final_price = DualPrice(std::move(y));
  return result;
}

}  // namespace olp
