#include "olp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "olp/algorithms.hpp"
#include "olp/hindsight.hpp"

namespace olp {

namespace {

TrialStatistic summarize(std::size_t horizon, Vector values) {
  TrialStatistic s;
  s.horizon = horizon;
  s.trials = values.size();
  if (values.empty()) return s;
  long double total = 0.0L;
  for (double v : values) total += v;
  s.mean = static_cast<double>(total / static_cast<long double>(values.size()));
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  s.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  s.max = values.back();
  return s;
}

ArrivalSequence trial_arrivals(const DistributionSpec& spec, std::span<const double> resources,
                               std::size_t horizon, std::uint64_t seed, std::size_t k) {
  MarketConfig config;
  config.horizon = horizon;
  config.m = resources.size();
  config.resources.assign(resources.begin(), resources.end());
  config.seed = derive_seed(seed, {horizon, k});
  return generate_arrivals(spec, config);
}

}  // namespace

TrialStatistic empirical_dual_convergence(const DistributionSpec& spec,
                                          std::span<const double> resources,
                                          std::size_t horizon, std::size_t trials,
                                          const ErrorBoundSpec& eb, std::uint64_t seed) {
  eb.validate();
  if (trials < 1) throw std::invalid_argument("empirical_dual_convergence: trials must be >= 1");
  Vector values;
  Vector budget(resources.size());
  for (std::size_t i = 0; i < budget.size(); ++i) budget[i] = static_cast<double>(horizon) * resources[i];
  for (std::size_t k = 0; k < trials; ++k) {
    auto arrivals = trial_arrivals(spec, resources, horizon, seed, k);
    auto sol = solve_hindsight(arrivals, budget);
    values.push_back(std::pow(dist_to_optimal(sol.y, eb), eb.gamma));
  }
  return summarize(horizon, std::move(values));
}

TrialStatistic noise_ball_statistic(const DistributionSpec& spec, std::span<const double> resources,
                                    std::size_t horizon, double alpha, std::size_t trials,
                                    const ErrorBoundSpec& eb, std::uint64_t seed) {
  eb.validate();
  if (!eb.y_star) throw std::invalid_argument("noise_ball_statistic: needs a known y*");
  Vector values;
  for (std::size_t k = 0; k < trials; ++k) {
    auto arrivals = trial_arrivals(spec, resources, horizon, seed, k);
    auto run = run_benchmark_subgradient(arrivals, resources, ConstantStep{alpha}, DualPrice(*eb.y_star));
    values.push_back(std::pow(dist_to_optimal(run.final_price, eb), eb.gamma));
  }
  return summarize(horizon, std::move(values));
}

TrialStatistic final_iterate_error(const DistributionSpec& spec, std::span<const double> resources,
                                   std::size_t horizon, std::size_t trials, const ErrorBoundSpec& eb,
                                   double mu, bool shifted, std::uint64_t seed) {
  eb.validate();
  Vector values;
  StepsizeSchedule schedule = shifted ? StepsizeSchedule(InverseTimeShiftStep{mu})
                                      : StepsizeSchedule(InverseTimeStep{mu});
  for (std::size_t k = 0; k < trials; ++k) {
    auto arrivals = trial_arrivals(spec, resources, horizon, seed, k);
    auto run = run_benchmark_subgradient(arrivals, resources, schedule,
                                         DualPrice::zeros(resources.size()));
    values.push_back(std::pow(dist_to_optimal(run.final_price, eb), eb.gamma));
  }
  return summarize(horizon, std::move(values));
}

OracleMoments subgradient_moments(const DistributionSpec& spec, std::span<const double> y,
                                  std::span<const double> resources, std::size_t draws,
                                  std::uint64_t seed) {
  if (draws < 2) throw std::invalid_argument("subgradient_moments: need at least two draws");
  const std::size_t m = resources.size();
  RandomStream rng(seed, Stream::kArrivals);
  std::vector<long double> sum(m, 0.0L);
  long double sq = 0.0L;
  for (std::size_t n = 0; n < draws; ++n) {
    Arrival arr = sample_arrival(spec, rng);
    Vector g = stochastic_subgradient(y, arr, resources);
    for (std::size_t i = 0; i < m; ++i) {
      sum[i] += g[i];
      sq += static_cast<long double>(g[i]) * g[i];
    }
  }
  OracleMoments out;
  out.mean.resize(m);
  long double mean_sq = 0.0L;
  for (std::size_t i = 0; i < m; ++i) {
    const long double mu = sum[i] / static_cast<long double>(draws);
    out.mean[i] = static_cast<double>(mu);
    mean_sq += mu * mu;
  }
  out.second_moment = static_cast<double>(sq / static_cast<long double>(draws));
  out.variance = out.second_moment - static_cast<double>(mean_sq);
  return out;
}

}  // namespace olp
