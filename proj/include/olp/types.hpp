// Core instance, trace and scoring types shared by every policy.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace olp {

using Vector = std::vector<double>;

/// One customer: a reward and the resources it requests.
struct Arrival {
  double reward = 0.0;
  Vector request;
};

/// Non-owning view of an arrival stored inside an ArrivalSequence.
struct ArrivalRef {
  double reward;
  std::span<const double> request;

  ArrivalRef(double c, std::span<const double> a) : reward(c), request(a) {}
  ArrivalRef(const Arrival& a) : reward(a.reward), request(a.request) {}  // NOLINT
};

/// A contiguous block of arrivals sharing one dimension m. Requests are
/// stored row-major so policies can stream through them without chasing
/// per-arrival allocations.
class ArrivalSequence {
 public:
  ArrivalSequence() = default;
  explicit ArrivalSequence(std::size_t m) : m_(m) {}

  void reserve(std::size_t n) {
    rewards_.reserve(n);
    requests_.reserve(n * m_);
  }
  void push_back(double reward, std::span<const double> request);
  void push_back(const Arrival& a) { push_back(a.reward, a.request); }

  std::size_t size() const { return rewards_.size(); }
  bool empty() const { return rewards_.empty(); }
  std::size_t dimension() const { return m_; }

  ArrivalRef operator[](std::size_t t) const {
    return {rewards_[t], std::span<const double>(requests_.data() + t * m_, m_)};
  }
  Arrival at(std::size_t t) const;

  /// The first n arrivals as a new sequence.
  ArrivalSequence prefix(std::size_t n) const;

  std::span<const double> rewards() const { return rewards_; }
  std::span<const double> requests() const { return requests_; }

 private:
  std::size_t m_ = 0;
  Vector rewards_;
  Vector requests_;
};

/// Almost-sure (or, for unbounded laws, high-probability) data bounds.
struct BoundsSpec {
  std::size_t m = 1;
  double request_bound = 1.0;   // sup |a_i|
  double reward_bound = 1.0;    // sup |c|
  double resource_lower = 1.0;  // lower bound on each d_i
  double resource_upper = 1.0;  // upper bound on each d_i
  bool high_probability_envelope = false;

  /// Throws std::invalid_argument unless every bound is strictly positive
  /// and resource_lower <= resource_upper.
  void validate() const;

  /// Bound on the norm of any stochastic dual subgradient: sqrt(m)(a + d_hi).
  double subgradient_bound() const;
  /// Radius of the ball that contains every optimal dual price: c / d_lo.
  double dual_radius() const;
};

/// Parameters that define one family of OLP instances.
struct MarketConfig {
  std::size_t horizon = 1;  // T
  std::size_t m = 1;
  Vector resources;         // d, per-period average; b = T * d
  std::uint64_t seed = 0;

  Vector budget() const;  // b
  void validate() const;
};

/// Accept/reject decisions together with the aggregates they imply.
/// Built incrementally by a policy, then treated as read-only.
class DecisionTrace {
 public:
  DecisionTrace() = default;
  explicit DecisionTrace(std::size_t m, std::size_t expected_length = 0);

  void push(ArrivalRef arrival, double x);
  /// Closes the exploration phase at the current length.
  void mark_phase_boundary();

  std::span<const double> decisions() const { return decisions_; }
  std::size_t size() const { return decisions_.size(); }
  std::size_t dimension() const { return consumption_.size(); }
  double revenue() const { return revenue_; }
  const Vector& consumption() const { return consumption_; }

  /// Number of steps in the exploration phase; 0 when the policy has none.
  std::size_t phase_boundary() const { return phase_boundary_; }
  double exploration_revenue() const { return exploration_revenue_; }
  const Vector& exploration_consumption() const { return exploration_consumption_; }

 private:
  Vector decisions_;
  double revenue_ = 0.0;
  Vector consumption_;
  std::size_t phase_boundary_ = 0;
  double exploration_revenue_ = 0.0;
  Vector exploration_consumption_;
};

struct DualSample {
  std::size_t t;
  Vector y;
};

/// Records dual iterates at powers of two and at explicitly requested
/// steps, keeping the log at O(log T) entries.
class DualLog {
 public:
  static bool is_log_point(std::size_t t);
  void maybe_record(std::size_t t, std::span<const double> y);
  void record(std::size_t t, std::span<const double> y);
  const std::vector<DualSample>& samples() const { return samples_; }

 private:
  std::vector<DualSample> samples_;
};

/// One scored trial.
struct RunReport {
  std::size_t trial_id = 0;
  std::string algo;
  std::string dist;
  std::size_t horizon = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  double regret = 0.0;
  double violation = 0.0;
  double hindsight_value = 0.0;
  std::size_t exploration_length = 0;       // T_e, 0 if single-phase
  std::optional<double> exploration_score;  // V(T_e) sample
  std::optional<double> wall_time_s;        // policy loop only
  double total_time_s = 0.0;                // generation + solve + policy
  std::vector<DualSample> dual_samples;

  double regret_plus_violation() const { return regret + violation; }

  static std::string csv_header();
  /// One CSV row matching csv_header(). wall_time_s prints as NA when
  /// timing was not recorded.
  std::string csv_row() const;
};

/// hindsight_value - revenue; negative when the policy over-consumes.
double regret(const DecisionTrace& trace, double hindsight_value);

/// || [consumption - b]_+ ||_2
double violation(std::span<const double> consumption, std::span<const double> budget);
double violation(const DecisionTrace& trace, std::span<const double> budget);

/// Single-trial sample of the exploration-phase metric
///   || [sum_{t<=T_e} (a_t x_t - d)]_+ || + sum_{t<=T_e} (f_star - c_t x_t).
/// Throws std::out_of_range unless 1 <= T_e <= trace length.
double exploration_score(const ArrivalSequence& arrivals, const DecisionTrace& trace,
                         double f_star, std::size_t exploration_length,
                         std::span<const double> resources);

}  // namespace olp
