// Seeded arrival generators and resource laws for the benchmark
// distributions, plus finite-support construction.
#pragma once

#include <functional>
#include <string>
#include <variant>

#include "olp/rng.hpp"
#include "olp/types.hpp"

namespace olp {

/// a_i and c i.i.d. U[0, 2]; m = 1 in the rate experiments.
struct ContinuousU1 {
  std::size_t m = 1;
};
/// m = 1, a = 1, c ~ U[0, 1].
struct MultiSecretary {};
/// a_i ~ Beta(1, 8), c ~ U[0, 3].
struct BetaCont {
  std::size_t m = 5;
};
/// a_i ~ U[1, 6], c ~ U[0, 3].
struct WideUniform {
  std::size_t m = 5;
};

/// K atoms (c_k, a_k) with probabilities p_k.
struct FiniteSupport {
  std::vector<Arrival> atoms;
  Vector probs;

  std::size_t size() const { return atoms.size(); }
  std::size_t dimension() const { return atoms.empty() ? 0 : atoms.front().request.size(); }
  /// Throws std::invalid_argument unless atoms are distinct with a common
  /// dimension and probs is a probability vector (sum within 1e-12).
  void validate() const;
};

struct Finite {
  FiniteSupport support;
  /// Recipe the atoms were drawn with, for reporting only.
  std::string recipe = "custom";
};

/// User supplied sampler with declared bounds.
struct Custom {
  std::string name;
  std::size_t m = 1;
  double request_bound = 1.0;
  double reward_bound = 1.0;
  std::function<Arrival(RandomStream&)> sampler;
};

using DistributionSpec =
    std::variant<ContinuousU1, MultiSecretary, BetaCont, WideUniform, Finite, Custom>;

std::size_t dimension(const DistributionSpec& spec);
std::string distribution_name(const DistributionSpec& spec);

/// Laws for the per-period resource vector d.
enum class ResourceLaw {
  kUniform,       // U[1/3, 2/3]
  kFoldedNormal,  // (1 + |X|) / 3, X ~ N(0, 1)
  kExponential,   // (1 + |X|) / 3, X ~ Exp(1)
  kFixed,         // every coordinate equals `value`
};

struct ResourceSpec {
  ResourceLaw law = ResourceLaw::kUniform;
  double value = 0.5;  // used by kFixed only
};

/// Atom recipes for finite supports.
enum class AtomLaw {
  kUniform,       // c ~ U[0, 1], a_i ~ U[0, 3]
  kFoldedNormal,  // c ~ |N(0, 1)|, a_i ~ |N(1, 1)|
  kExponential,   // c ~ Exp(mean 1), a_i ~ Exp(mean 2)
  kGamma,         // c ~ U[1, 2], a_i ~ Gamma(shape 2, scale 3)
};

std::string to_string(ResourceLaw law);
std::string to_string(AtomLaw law);
ResourceLaw resource_law_from_string(const std::string& s);
AtomLaw atom_law_from_string(const std::string& s);

Arrival sample_arrival(const DistributionSpec& spec, RandomStream& rng);
/// Appends `count` draws to `out`.
void sample_arrivals(const DistributionSpec& spec, std::size_t count, RandomStream& rng,
                     ArrivalSequence& out);
ArrivalSequence sample_arrivals(const DistributionSpec& spec, std::size_t count,
                                RandomStream& rng);

Vector sample_resources(const ResourceSpec& spec, std::size_t m, RandomStream& rng);

/// K atoms from `law` plus a probability vector drawn uniformly from the
/// simplex (normalised Exp(1) draws). Throws std::invalid_argument if K < 1.
FiniteSupport finite_support_build(std::size_t m, std::size_t K, AtomLaw law,
                                   RandomStream& atom_rng, RandomStream& prob_rng);

/// Bounds implied by a distribution and a resource law. Finite supports
/// give exact bounds; unbounded resource laws record the 99.999th
/// percentile and set high_probability_envelope.
BoundsSpec derive_bounds(const DistributionSpec& spec, const ResourceSpec& resources);

/// JSON round-trip for replaying a finite support.
std::string finite_support_to_json(const FiniteSupport& support);
FiniteSupport finite_support_from_json(const std::string& text);

/// Arrivals for a market: draws config.horizon arrivals from the
/// arrival substream of config.seed.
ArrivalSequence generate_arrivals(const DistributionSpec& spec, const MarketConfig& config);

}  // namespace olp
