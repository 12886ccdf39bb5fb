#include "olp/learners.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace olp {

ArrivalRef ArrivalCursor::next() {
  if (position_ >= arrivals_.size()) throw std::out_of_range("arrival stream exhausted");
  return arrivals_[position_++];
}

void AssgConfig::validate() const {
  if (K < 1 || t_inner < 1) throw std::invalid_argument("ASSG: K and t_inner must be >= 1");
  if (!(eps0 > 0 && D1 > 0 && G > 0 && eta1 > 0 && theta > 0 && lambda > 0 && delta > 0 &&
        domain_radius > 0)) {
    throw std::invalid_argument("ASSG: parameters must be positive");
  }
}

std::string AssgConfig::describe() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "assg(K=%zu,t=%zu,extra=%zu,eps0=%.6g,D1=%.6g,G=%.6g,eta1=%.6g,R=%.6g)",
                K, t_inner, last_stage_extra, eps0, D1, G, eta1, domain_radius);
  return buf;
}

namespace {

std::size_t stage_count(double eps, double eps0) {
  if (!(eps > 0 && eps0 > 0)) throw std::invalid_argument("ASSG: eps and eps0 must be positive");
  const double k = std::ceil(std::log2(2.0 * eps0 / eps));
  return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

}  // namespace

AssgConfig AssgConfig::from_target(double eps, double eps0, double delta, double gamma, double lambda,
                                   double G, double domain_radius) {
  if (!(gamma >= 1.0)) throw std::invalid_argument("ASSG: gamma must be >= 1");
  AssgConfig cfg;
  cfg.K = stage_count(eps, eps0);
  cfg.eps0 = eps0;
  cfg.theta = 1.0 / gamma;
  cfg.lambda = lambda;
  cfg.delta = delta;
  cfg.G = G;
  cfg.domain_radius = domain_radius;
  cfg.D1 = std::pow(2.0, 1.0 - cfg.theta) * std::pow(lambda, -cfg.theta) * eps0 /
           std::pow(eps, 1.0 - cfg.theta);
  const double factor = std::max(9.0, 1728.0 * std::log(static_cast<double>(cfg.K) / delta));
  cfg.t_inner = static_cast<std::size_t>(std::ceil(factor * G * G * cfg.D1 * cfg.D1 / (eps0 * eps0)));
  cfg.eta1 = eps0 / (3.0 * G * G);
  cfg.validate();
  return cfg;
}

AssgConfig AssgConfig::from_budget(std::size_t budget, double eps, double eps0, double D1,
                                   double gamma, double lambda, double G, double domain_radius) {
  if (budget < 1) throw std::invalid_argument("ASSG: budget must be >= 1");
  if (!(gamma >= 1.0)) throw std::invalid_argument("ASSG: gamma must be >= 1");
  AssgConfig cfg;
  cfg.K = std::min(stage_count(eps, eps0), budget);
  cfg.t_inner = budget / cfg.K;
  cfg.last_stage_extra = budget - cfg.K * cfg.t_inner;
  cfg.eps0 = eps0;
  cfg.D1 = D1;
  cfg.G = G;
  cfg.eta1 = eps0 / (3.0 * G * G);
  cfg.theta = 1.0 / gamma;
  cfg.lambda = lambda;
  cfg.domain_radius = domain_radius;
  cfg.validate();
  return cfg;
}

void RassgConfig::validate() const {
  if (S < 1) throw std::invalid_argument("RASSG: S must be >= 1");
  if (!(omega > 0 && omega <= 1)) throw std::invalid_argument("RASSG: omega must lie in (0, 1]");
  if (!(gamma >= 1.0)) throw std::invalid_argument("RASSG: gamma must be >= 1");
  first.validate();
}

AssgConfig RassgConfig::round(std::size_t s) const {
  if (s < 1 || s > S) throw std::out_of_range("RASSG: round out of range");
  AssgConfig cfg = first;
  const double e = 1.0 - 1.0 / gamma;
  const double k = static_cast<double>(s - 1);
  if (s > 1) {
    cfg.t_inner = static_cast<std::size_t>(
        std::ceil(static_cast<double>(first.t_inner) * std::pow(2.0, 2.0 * e * k) - 1e-9));
    cfg.D1 = first.D1 * std::pow(2.0, e * k);
    cfg.eps0 = first.eps0 * std::pow(omega, k);
    cfg.eta1 = cfg.eps0 / (3.0 * cfg.G * cfg.G);
    cfg.last_stage_extra = 0;
  }
  return cfg;
}

std::size_t RassgConfig::total_draws() const {
  std::size_t n = 0;
  for (std::size_t s = 1; s <= S; ++s) n += round(s).total_draws();
  return n;
}

InverseTimeLearner::InverseTimeLearner(Vector resources, double mu, bool shifted)
    : resources_(std::move(resources)), mu_(mu), shifted_(shifted), y_(resources_.size(), 0.0) {
  if (!(mu > 0)) throw std::invalid_argument("inverse-time learner: mu must be positive");
}

void InverseTimeLearner::observe(ArrivalRef arrival) {
  ++steps_;
  const double step = 1.0 / (mu_ * static_cast<double>(shifted_ ? steps_ + 1 : steps_));
  const int x = decide(y_, arrival);
  for (std::size_t i = 0; i < y_.size(); ++i) {
    const double g = resources_[i] - (x ? arrival.request[i] : 0.0);
    y_[i] = std::max(0.0, y_[i] - step * g);
  }
}

std::string InverseTimeLearner::describe() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "inverse-time(mu=%.6g%s)", mu_, shifted_ ? ",shifted" : "");
  return buf;
}

StagedLearner::StagedLearner(const AssgConfig& cfg, Vector y0, Vector resources)
    : domain_radius_(cfg.domain_radius), resources_(std::move(resources)) {
  cfg.validate();
  add_rounds(cfg);
  description_ = cfg.describe();
  last_output_ = project_ball_orthant(y0, domain_radius_).values();
  center_ = last_output_;
  open_stage();
}

StagedLearner::StagedLearner(const RassgConfig& cfg, Vector y0, Vector resources)
    : domain_radius_(cfg.first.domain_radius), resources_(std::move(resources)) {
  cfg.validate();
  for (std::size_t s = 1; s <= cfg.S; ++s) add_rounds(cfg.round(s));
  char buf[96];
  std::snprintf(buf, sizeof buf, "rassg(S=%zu,omega=%.6g,gamma=%.6g)+", cfg.S, cfg.omega, cfg.gamma);
  description_ = buf + cfg.first.describe();
  last_output_ = project_ball_orthant(y0, domain_radius_).values();
  center_ = last_output_;
  open_stage();
}

void StagedLearner::add_rounds(const AssgConfig& cfg) {
  double eta = cfg.eta1;
  double radius = cfg.D1;
  for (std::size_t k = 0; k < cfg.K; ++k) {
    std::size_t steps = cfg.t_inner + (k + 1 == cfg.K ? cfg.last_stage_extra : 0);
    stages_.push_back({steps, eta, radius});
    eta *= 0.5;
    radius *= 0.5;
  }
}

void StagedLearner::open_stage() {
  step_ = 0;
  y_ = center_;
  sum_.assign(y_.size(), 0.0L);
}

void StagedLearner::observe(ArrivalRef arrival) {
  if (finished()) throw std::out_of_range("staged learner: draw budget exhausted");
  const Stage& stage = stages_[stage_];
  const int x = decide(y_, arrival);
  Vector probe(y_.size());
  for (std::size_t i = 0; i < y_.size(); ++i) {
    const double g = resources_[i] - (x ? arrival.request[i] : 0.0);
    probe[i] = y_[i] - stage.eta * g;
  }
  y_ = project_two_balls(probe, domain_radius_, center_, stage.radius).values();
  for (std::size_t i = 0; i < y_.size(); ++i) sum_[i] += y_[i];
  if (++step_ == stage.steps) {
    for (std::size_t i = 0; i < y_.size(); ++i) {
      last_output_[i] = static_cast<double>(sum_[i] / static_cast<long double>(stage.steps));
    }
    center_ = last_output_;
    ++stage_;
    if (!finished()) open_stage();
  }
}

DualPrice run_assg(ArrivalCursor& stream, const AssgConfig& cfg, const DualPrice& y0,
                   std::span<const double> resources) {
  StagedLearner learner(cfg, y0.values(), Vector(resources.begin(), resources.end()));
  if (stream.remaining() < cfg.total_draws()) throw std::out_of_range("run_assg: arrival stream exhausted");
  while (!learner.finished()) learner.observe(stream.next());
  return DualPrice(learner.output());
}

DualPrice run_rassg(ArrivalCursor& stream, const RassgConfig& cfg, const DualPrice& y0,
                    std::span<const double> resources) {
  cfg.validate();
  if (stream.remaining() < cfg.total_draws()) throw std::out_of_range("run_rassg: arrival stream exhausted");
  DualPrice y = y0;
  for (std::size_t s = 1; s <= cfg.S; ++s) y = run_assg(stream, cfg.round(s), y, resources);
  return y;
}

}  // namespace olp
