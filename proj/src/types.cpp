#include "olp/types.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

namespace olp {

void ArrivalSequence::push_back(double reward, std::span<const double> request) {
  if (request.size() != m_) {
    throw std::invalid_argument("arrival dimension does not match sequence dimension");
  }
  rewards_.push_back(reward);
  requests_.insert(requests_.end(), request.begin(), request.end());
}

Arrival ArrivalSequence::at(std::size_t t) const {
  if (t >= size()) throw std::out_of_range("arrival index out of range");
  auto ref = (*this)[t];
  return Arrival{ref.reward, Vector(ref.request.begin(), ref.request.end())};
}

ArrivalSequence ArrivalSequence::prefix(std::size_t n) const {
  if (n > size()) throw std::out_of_range("prefix longer than sequence");
  ArrivalSequence out(m_);
  out.rewards_.assign(rewards_.begin(), rewards_.begin() + static_cast<std::ptrdiff_t>(n));
  out.requests_.assign(requests_.begin(), requests_.begin() + static_cast<std::ptrdiff_t>(n * m_));
  return out;
}

void BoundsSpec::validate() const {
  if (m == 0) throw std::invalid_argument("bounds: m must be >= 1");
  if (!(request_bound > 0) || !(reward_bound > 0)) {
    throw std::invalid_argument("bounds: request and reward bounds must be positive");
  }
  if (!(resource_lower > 0) || !(resource_upper >= resource_lower)) {
    throw std::invalid_argument("bounds: need 0 < resource_lower <= resource_upper");
  }
}

double BoundsSpec::subgradient_bound() const {
  return std::sqrt(static_cast<double>(m)) * (request_bound + resource_upper);
}

double BoundsSpec::dual_radius() const { return reward_bound / resource_lower; }

Vector MarketConfig::budget() const {
  Vector b(resources.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<double>(horizon) * resources[i];
  return b;
}

void MarketConfig::validate() const {
  if (horizon < 1) throw std::invalid_argument("market: horizon must be >= 1");
  if (m < 1) throw std::invalid_argument("market: m must be >= 1");
  if (resources.size() != m) throw std::invalid_argument("market: resources must have length m");
  for (double di : resources) {
    if (!(di > 0)) throw std::invalid_argument("market: resources must be positive");
  }
}

DecisionTrace::DecisionTrace(std::size_t m, std::size_t expected_length)
    : consumption_(m, 0.0), exploration_consumption_(m, 0.0) {
  decisions_.reserve(expected_length);
}

void DecisionTrace::push(ArrivalRef arrival, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("decision outside [0, 1]");
  decisions_.push_back(x);
  if (x == 0.0) return;
  revenue_ += arrival.reward * x;
  for (std::size_t i = 0; i < consumption_.size(); ++i) consumption_[i] += arrival.request[i] * x;
}

void DecisionTrace::mark_phase_boundary() {
  phase_boundary_ = decisions_.size();
  exploration_revenue_ = revenue_;
  exploration_consumption_ = consumption_;
}

bool DualLog::is_log_point(std::size_t t) { return t > 0 && std::has_single_bit(t); }

void DualLog::maybe_record(std::size_t t, std::span<const double> y) {
  if (is_log_point(t)) record(t, y);
}

void DualLog::record(std::size_t t, std::span<const double> y) {
  if (!samples_.empty() && samples_.back().t == t) {
    samples_.back().y.assign(y.begin(), y.end());
    return;
  }
  samples_.push_back({t, Vector(y.begin(), y.end())});
}

std::string RunReport::csv_header() {
  return "trial_id,algo,dist,T,m,seed,regret,violation,r_plus_v,hindsight,T_e,wall_time_s";
}

std::string RunReport::csv_row() const {
  char buf[512];
  char wall[64];
  if (wall_time_s) {
    std::snprintf(wall, sizeof wall, "%.6g", *wall_time_s);
  } else {
    std::snprintf(wall, sizeof wall, "NA");
  }
  std::snprintf(buf, sizeof buf, "%zu,%s,%s,%zu,%zu,%llu,%.12g,%.12g,%.12g,%.12g,%zu,%s", trial_id,
                algo.c_str(), dist.c_str(), horizon, m, static_cast<unsigned long long>(seed), regret,
                violation, regret_plus_violation(), hindsight_value, exploration_length, wall);
  return buf;
}

double regret(const DecisionTrace& trace, double hindsight_value) {
  return hindsight_value - trace.revenue();
}

double violation(std::span<const double> consumption, std::span<const double> budget) {
  if (consumption.size() != budget.size()) {
    throw std::invalid_argument("violation: consumption and budget differ in length");
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < budget.size(); ++i) {
    double excess = consumption[i] - budget[i];
    if (excess > 0) sq += excess * excess;
  }
  return std::sqrt(sq);
}

double violation(const DecisionTrace& trace, std::span<const double> budget) {
  return violation(trace.consumption(), budget);
}

double exploration_score(const ArrivalSequence& arrivals, const DecisionTrace& trace,
                         double f_star, std::size_t exploration_length,
                         std::span<const double> resources) {
  if (exploration_length < 1 || exploration_length > trace.size() ||
      exploration_length > arrivals.size()) {
    throw std::out_of_range("exploration_score: T_e must lie in [1, T]");
  }
  const std::size_t m = resources.size();
  Vector excess(m, 0.0);
  double gap = 0.0;
  auto x = trace.decisions();
  for (std::size_t t = 0; t < exploration_length; ++t) {
    auto arr = arrivals[t];
    for (std::size_t i = 0; i < m; ++i) excess[i] += arr.request[i] * x[t] - resources[i];
    gap += f_star - arr.reward * x[t];
  }
  double sq = 0.0;
  for (double e : excess) {
    if (e > 0) sq += e * e;
  }
  return std::sqrt(sq) + gap;
}

}  // namespace olp
