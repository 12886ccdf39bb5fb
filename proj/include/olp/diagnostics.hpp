// Empirical measurements of dual behaviour: how fast the hindsight dual
// approaches Y*, how far constant-step iterates wander around y*, and the
// measured second moment of the subgradient oracle.
#pragma once

#include <cstdint>

#include "olp/distributions.hpp"
#include "olp/dual.hpp"
#include "olp/types.hpp"

namespace olp {

struct TrialStatistic {
  std::size_t horizon = 0;
  std::size_t trials = 0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
};

/// Mean over trials of dist(y*_T, Y*)^gamma, where y*_T is the hindsight
/// dual of a fresh length-T sample. Trial k draws from
/// derive_seed(seed, {T, k}).
TrialStatistic empirical_dual_convergence(const DistributionSpec& spec,
                                          std::span<const double> resources,
                                          std::size_t horizon, std::size_t trials,
                                          const ErrorBoundSpec& eb, std::uint64_t seed);

/// Constant-step subgradient started exactly at y* for T steps; returns
/// the mean over trials of dist(y^{T+1}, Y*)^gamma.
TrialStatistic noise_ball_statistic(const DistributionSpec& spec, std::span<const double> resources,
                                    std::size_t horizon, double alpha, std::size_t trials,
                                    const ErrorBoundSpec& eb, std::uint64_t seed);

/// Mean of dist(y^{T+1}, Y*)^gamma over trials for any stepsize-driven run
/// from y = 0; used to check 1/(mu (t + 1)) rates.
TrialStatistic final_iterate_error(const DistributionSpec& spec, std::span<const double> resources,
                                   std::size_t horizon, std::size_t trials, const ErrorBoundSpec& eb,
                                   double mu, bool shifted, std::uint64_t seed);

/// E||g||^2 and E||g - E g||^2 of the stochastic subgradient at y, from n draws.
struct OracleMoments {
  Vector mean;
  double second_moment = 0.0;
  double variance = 0.0;
};
OracleMoments subgradient_moments(const DistributionSpec& spec, std::span<const double> y,
                                  std::span<const double> resources, std::size_t draws,
                                  std::uint64_t seed);

}  // namespace olp
