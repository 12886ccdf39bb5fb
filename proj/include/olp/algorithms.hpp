// Online policies: the constant/inverse-time dual subgradient method, the
// two-phase explore-then-exploit framework, and a dual-resolving baseline.
//
// Every policy walks the arrivals once. At step t it accepts iff
// c_t >= <a_t, y>, then moves y <- [y - alpha_t (d - a_t x_t)]_+.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "olp/distributions.hpp"
#include "olp/dual.hpp"
#include "olp/learners.hpp"
#include "olp/types.hpp"

namespace olp {

struct ConstantStep {
  double alpha;
};
/// alpha_t = 1 / (mu t), t = 1, 2, ...
struct InverseTimeStep {
  double mu;
};
/// alpha_t = 1 / (mu (t + 1))
struct InverseTimeShiftStep {
  double mu;
};
using StepsizeSchedule = std::variant<ConstantStep, InverseTimeStep, InverseTimeShiftStep>;

/// Throws std::invalid_argument unless the rate parameter is positive.
void validate(const StepsizeSchedule& schedule);
/// Step used at the 1-based step t.
double step_at(const StepsizeSchedule& schedule, std::size_t t);
std::string describe(const StepsizeSchedule& schedule);

/// sqrt(2 c / (m d_lo (a + d_hi)^2)) / sqrt(T).
double benchmark_stepsize(const BoundsSpec& bounds, std::size_t horizon);

struct PolicyResult {
  DecisionTrace trace;
  DualPrice final_price;
  DualLog log;
};

PolicyResult run_benchmark_subgradient(const ArrivalSequence& arrivals,
                                       std::span<const double> resources,
                                       const StepsizeSchedule& schedule,
                                       const DualPrice& y_init, bool keep_log = false);

/// The 1/(mu t) method used both to learn and to decide.
PolicyResult run_learner_as_decider(const ArrivalSequence& arrivals,
                                    std::span<const double> resources, double mu,
                                    bool keep_log = false);

enum class LearnerKind { kInverseTime, kAssg, kRassg };
std::string to_string(LearnerKind kind);

struct TwoPhaseConfig {
  std::size_t exploration_length = 1;  // T_e
  double alpha_e = 0.0;
  double alpha_p = 0.0;
  LearnerKind learner = LearnerKind::kInverseTime;
  double inverse_time_mu = 1.0;
  /// Explicit learner settings; when absent the ASSG/RASSG parameters are
  /// derived from the T_e draw budget and the instance bounds.
  std::optional<AssgConfig> assg;
  std::optional<RassgConfig> rassg;
  std::optional<double> delta_target;

  /// Throws std::invalid_argument unless 1 <= T_e < T and both steps are
  /// positive.
  void validate(std::size_t horizon) const;
  std::string describe() const;
};

/// Theorem-driven configuration.
///   diam(Y*) = 0:  T_e = ceil(C T^((2g-2)/(2g-1)) ln^2 T),
///                  alpha_e = T^(-(g-1)/(2g-1)) / ln T,  alpha_p = T^(-g/(2g-1))
///   diam(Y*) = D > 0:
///                  T_e = 2D / (2D + 1) T,
///                  alpha_e = sqrt(2c / (m (a + d_hi)^2 d_lo) (2D + 1) / (2D T)),
///                  alpha_p = sqrt(2c / (m (a + d_hi)^2 d_lo) 2D (2D + 1) / T)
/// Throws std::invalid_argument when alpha_e exceeds
/// 2 d_lo / (3 m (a + d_hi)^2) or T_e is not below T.
TwoPhaseConfig configure_two_phase_theorem(std::size_t horizon, const ErrorBoundSpec& eb,
                                           const BoundsSpec& bounds, double constant = 1.0);

enum class SupportSetting { kContinuous, kFinite };

/// continuous: T_e = ceil(T^(2/3)), alpha_e = T^(-1/3), alpha_p = T^(-2/3),
///             inverse-time learner with mu = 1.
/// finite:     T_e = ceil(50 ln T), alpha_e = T^(-1/2), alpha_p = 1/T, ASSG.
TwoPhaseConfig configure_two_phase_experiment(std::size_t horizon, SupportSetting setting);

/// ASSG settings for a T_e-draw budget when none are given explicitly:
/// eps0 = G R (bounds f(0) - f*), target eps = T^(-1/4), D1 = 2R, with
/// G = sqrt(m)(a + d_hi) and R = c / d_lo.
AssgConfig default_budget_assg(std::size_t budget, std::size_t horizon, const BoundsSpec& bounds);

std::unique_ptr<DualLearner> make_learner(const TwoPhaseConfig& tp, std::size_t horizon,
                                          std::span<const double> resources,
                                          const BoundsSpec& bounds);

struct TwoPhaseResult {
  DecisionTrace trace;
  DualPrice final_price;
  DualPrice learned_price;  // learner output projected onto Y'
  DualLog log;
  std::string learner_description;
};

TwoPhaseResult run_two_phase(const ArrivalSequence& arrivals, std::span<const double> resources,
                             const BoundsSpec& bounds, const TwoPhaseConfig& tp,
                             bool keep_log = false);
/// Same, with a caller-supplied learner.
TwoPhaseResult run_two_phase(const ArrivalSequence& arrivals, std::span<const double> resources,
                             const BoundsSpec& bounds, const TwoPhaseConfig& tp,
                             DualLearner& learner, bool keep_log = false);

struct ResolvingResult {
  DecisionTrace trace;
  DualPrice final_price;
  std::size_t resolves = 0;
  /// Some resolve saw a negative remaining budget and kept the old prices.
  bool infeasible_flag = false;
};

/// Proxy for LP-based policies: every `resolve_every` steps (starting at
/// step 1) solves the LP on the arrivals seen so far, current one included,
/// with the remaining average budget (b - used) / (T - t + 1), then
/// accepts greedily against that price.
ResolvingResult run_resolving_baseline(const ArrivalSequence& arrivals,
                                       std::span<const double> resources,
                                       std::size_t resolve_every);

std::size_t default_resolve_interval(std::size_t horizon);

}  // namespace olp
