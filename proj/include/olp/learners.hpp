// Dual learners: estimators of y* that consume arrivals but never decide.
//
// ASSG runs K stages of projected stochastic subgradient steps. Stage k
// starts at the previous stage's average y_{k-1}, projects every step onto
// {y >= 0, ||y|| <= R} intersected with B(y_{k-1}, D_k), takes t_k steps of
// size eta_k and returns the average of its post-step iterates; eta and D
// halve between stages. RASSG chains S ASSG calls with growing t and D1 and
// shrinking eps0.
#pragma once

#include <memory>
#include <string>

#include "olp/dual.hpp"
#include "olp/types.hpp"

namespace olp {

/// Reads arrivals off a sequence in order. next() throws
/// std::out_of_range once the sequence is exhausted.
class ArrivalCursor {
 public:
  explicit ArrivalCursor(const ArrivalSequence& arrivals, std::size_t start = 0)
      : arrivals_(arrivals), position_(start) {}
  ArrivalRef next();
  std::size_t position() const { return position_; }
  std::size_t remaining() const { return arrivals_.size() - position_; }

 private:
  const ArrivalSequence& arrivals_;
  std::size_t position_;
};

struct AssgConfig {
  std::size_t K = 1;
  std::size_t t_inner = 1;
  std::size_t last_stage_extra = 0;  // budget remainder, added to stage K
  double eps0 = 1.0;
  double D1 = 1.0;
  double G = 1.0;
  double eta1 = 1.0 / 3.0;  // eps0 / (3 G^2)
  double theta = 1.0;       // 1 / gamma
  double lambda = 1.0;
  double delta = 0.1;
  double domain_radius = 1.0;  // R of {y >= 0, ||y|| <= R}

  std::size_t total_draws() const { return K * t_inner + last_stage_extra; }
  void validate() const;
  std::string describe() const;

  /// Accuracy-driven setup: K = ceil(log2(2 eps0 / eps)),
  /// D1 = 2^(1-theta) lambda^(-theta) eps0 / eps^(1-theta),
  /// t = ceil(max(9, 1728 ln(K / delta)) G^2 D1^2 / eps0^2).
  static AssgConfig from_target(double eps, double eps0, double delta, double gamma, double lambda,
                                double G, double domain_radius);

  /// Budget-driven setup for a fixed number of draws: K from the target
  /// accuracy as above (capped at `budget`), t = floor(budget / K) and the
  /// remainder on the last stage. D1 is given directly.
  static AssgConfig from_budget(std::size_t budget, double eps, double eps0, double D1, double gamma,
                                double lambda, double G, double domain_radius);
};

struct RassgConfig {
  std::size_t S = 1;
  AssgConfig first;   // round-1 ASSG (K, t_1, D1, eps0)
  double omega = 1.0;
  double gamma = 1.0;

  void validate() const;
  /// ASSG config of round s (1-based): t and D1 grow by 2^(2(1 - 1/gamma))
  /// and 2^(1 - 1/gamma) per round, eps0 shrinks by omega.
  AssgConfig round(std::size_t s) const;
  std::size_t total_draws() const;
};

DualPrice run_assg(ArrivalCursor& stream, const AssgConfig& cfg, const DualPrice& y0,
                   std::span<const double> resources);
DualPrice run_rassg(ArrivalCursor& stream, const RassgConfig& cfg, const DualPrice& y0,
                    std::span<const double> resources);

/// Streaming learner interface for the exploration phase.
class DualLearner {
 public:
  virtual ~DualLearner() = default;
  virtual void observe(ArrivalRef arrival) = 0;
  /// Current estimate of y*.
  virtual Vector output() const = 0;
  virtual std::string describe() const = 0;
};

/// Projected subgradient with step 1/(mu t), or 1/(mu (t + 1)) when
/// `shifted`; outputs the last iterate.
class InverseTimeLearner : public DualLearner {
 public:
  InverseTimeLearner(Vector resources, double mu, bool shifted = false);
  void observe(ArrivalRef arrival) override;
  Vector output() const override { return y_; }
  std::string describe() const override;

 private:
  Vector resources_;
  double mu_;
  bool shifted_;
  std::size_t steps_ = 0;
  Vector y_;
};

/// Streaming ASSG / RASSG. Draws beyond the configured budget throw
/// std::out_of_range; before the last stage closes, output() is the most
/// recent stage average (y0 before the first).
class StagedLearner : public DualLearner {
 public:
  StagedLearner(const AssgConfig& cfg, Vector y0, Vector resources);
  StagedLearner(const RassgConfig& cfg, Vector y0, Vector resources);
  void observe(ArrivalRef arrival) override;
  Vector output() const override { return last_output_; }
  std::string describe() const override { return description_; }
  bool finished() const { return stage_ == stages_.size(); }

 private:
  struct Stage {
    std::size_t steps;
    double eta;
    double radius;
  };
  void add_rounds(const AssgConfig& cfg);
  void open_stage();

  std::vector<Stage> stages_;
  double domain_radius_;
  Vector resources_;
  std::string description_;
  std::size_t stage_ = 0;
  std::size_t step_ = 0;
  Vector center_;
  Vector y_;
  std::vector<long double> sum_;
  Vector last_output_;
};

/// Ignores arrivals and returns a fixed price (zeros by default). Used for
/// oracle starts and to check that learning never feeds back into decisions.
class FixedLearner : public DualLearner {
 public:
  explicit FixedLearner(Vector y) : y_(std::move(y)) {}
  void observe(ArrivalRef) override {}
  Vector output() const override { return y_; }
  std::string describe() const override { return "fixed"; }

 private:
  Vector y_;
};

}  // namespace olp
