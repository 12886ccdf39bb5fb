#include "olp/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace olp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Upper 1e-5 quantiles of the unbounded resource laws' X.
constexpr double kFoldedNormalQuantile = 4.4171734134667;  // Phi^-1(1 - 5e-6)
const double kExponentialQuantile = std::log(1e5);

std::size_t draw_index(const Vector& cumulative, double u) {
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

Vector cumulative_probs(const Vector& probs) {
  Vector cum(probs.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    cum[k] = acc;
  }
  return cum;
}

void draw_finite(const FiniteSupport& support, const Vector& cumulative, RandomStream& rng,
                 ArrivalSequence& out) {
  const double u = rng.uniform() * cumulative.back();
  const Arrival& atom = support.atoms[draw_index(cumulative, u)];
  out.push_back(atom.reward, atom.request);
}

}  // namespace

void FiniteSupport::validate() const {
  if (atoms.empty()) throw std::invalid_argument("finite support: no atoms");
  if (probs.size() != atoms.size()) throw std::invalid_argument("finite support: probs/atoms size mismatch");
  const std::size_t m = dimension();
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0)) throw std::invalid_argument("finite support: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("finite support: probs do not sum to 1");
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (atoms[k].request.size() != m) throw std::invalid_argument("finite support: ragged atoms");
    for (std::size_t j = 0; j < k; ++j) {
      if (atoms[j].reward == atoms[k].reward && atoms[j].request == atoms[k].request) {
        throw std::invalid_argument("finite support: duplicate atom");
      }
    }
  }
}

std::size_t dimension(const DistributionSpec& spec) {
  return std::visit(Overloaded{
                        [](const ContinuousU1& s) { return s.m; },
                        [](const MultiSecretary&) -> std::size_t { return 1; },
                        [](const BetaCont& s) { return s.m; },
                        [](const WideUniform& s) { return s.m; },
                        [](const Finite& s) { return s.support.dimension(); },
                        [](const Custom& s) { return s.m; },
                    },
                    spec);
}

std::string distribution_name(const DistributionSpec& spec) {
  return std::visit(Overloaded{
                        [](const ContinuousU1&) -> std::string { return "continuous-u1"; },
                        [](const MultiSecretary&) -> std::string { return "multi-secretary"; },
                        [](const BetaCont&) -> std::string { return "beta"; },
                        [](const WideUniform&) -> std::string { return "wide-uniform"; },
                        [](const Finite& s) { return "finite-" + s.recipe; },
                        [](const Custom& s) { return s.name; },
                    },
                    spec);
}

std::string to_string(ResourceLaw law) {
  switch (law) {
    case ResourceLaw::kUniform: return "uniform";
    case ResourceLaw::kFoldedNormal: return "folded-normal";
    case ResourceLaw::kExponential: return "exponential";
    case ResourceLaw::kFixed: return "fixed";
  }
  return "unknown";
}

std::string to_string(AtomLaw law) {
  switch (law) {
    case AtomLaw::kUniform: return "uniform";
    case AtomLaw::kFoldedNormal: return "folded-normal";
    case AtomLaw::kExponential: return "exponential";
    case AtomLaw::kGamma: return "gamma";
  }
  return "unknown";
}

ResourceLaw resource_law_from_string(const std::string& s) {
  if (s == "uniform") return ResourceLaw::kUniform;
  if (s == "folded-normal") return ResourceLaw::kFoldedNormal;
  if (s == "exponential") return ResourceLaw::kExponential;
  if (s == "fixed") return ResourceLaw::kFixed;
  throw std::invalid_argument("unknown resource law: " + s);
}

AtomLaw atom_law_from_string(const std::string& s) {
  if (s == "uniform") return AtomLaw::kUniform;
  if (s == "folded-normal") return AtomLaw::kFoldedNormal;
  if (s == "exponential") return AtomLaw::kExponential;
  if (s == "gamma") return AtomLaw::kGamma;
  throw std::invalid_argument("unknown atom law: " + s);
}

void sample_arrivals(const DistributionSpec& spec, std::size_t count, RandomStream& rng,
                     ArrivalSequence& out) {
  const std::size_t m = dimension(spec);
  if (out.dimension() != m) throw std::invalid_argument("sample_arrivals: dimension mismatch");
  out.reserve(out.size() + count);
  Vector a(m);
  std::visit(Overloaded{
                 [&](const ContinuousU1&) {
                   for (std::size_t t = 0; t < count; ++t) {
                     for (auto& ai : a) ai = rng.uniform(0.0, 2.0);
                     double c = rng.uniform(0.0, 2.0);
                     out.push_back(c, a);
                   }
                 },
                 [&](const MultiSecretary&) {
                   a[0] = 1.0;
                   for (std::size_t t = 0; t < count; ++t) out.push_back(rng.uniform(), a);
                 },
                 [&](const BetaCont&) {
                   for (std::size_t t = 0; t < count; ++t) {
                     for (auto& ai : a) ai = rng.beta(1.0, 8.0);
                     double c = rng.uniform(0.0, 3.0);
                     out.push_back(c, a);
                   }
                 },
                 [&](const WideUniform&) {
                   for (std::size_t t = 0; t < count; ++t) {
                     for (auto& ai : a) ai = rng.uniform(1.0, 6.0);
                     double c = rng.uniform(0.0, 3.0);
                     out.push_back(c, a);
                   }
                 },
                 [&](const Finite& s) {
                   const Vector cum = cumulative_probs(s.support.probs);
                   for (std::size_t t = 0; t < count; ++t) draw_finite(s.support, cum, rng, out);
                 },
                 [&](const Custom& s) {
                   for (std::size_t t = 0; t < count; ++t) out.push_back(s.sampler(rng));
                 },
             },
             spec);
}

ArrivalSequence sample_arrivals(const DistributionSpec& spec, std::size_t count, RandomStream& rng) {
  ArrivalSequence out(dimension(spec));
  sample_arrivals(spec, count, rng, out);
  return out;
}

Arrival sample_arrival(const DistributionSpec& spec, RandomStream& rng) {
  return sample_arrivals(spec, 1, rng).at(0);
}

Vector sample_resources(const ResourceSpec& spec, std::size_t m, RandomStream& rng) {
  Vector d(m);
  for (auto& di : d) {
    switch (spec.law) {
      case ResourceLaw::kUniform: di = rng.uniform(1.0 / 3.0, 2.0 / 3.0); break;
      case ResourceLaw::kFoldedNormal: di = (1.0 + std::abs(rng.normal())) / 3.0; break;
      case ResourceLaw::kExponential: di = (1.0 + rng.exponential(1.0)) / 3.0; break;
      case ResourceLaw::kFixed: di = spec.value; break;
    }
  }
  return d;
}

FiniteSupport finite_support_build(std::size_t m, std::size_t K, AtomLaw law,
                                   RandomStream& atom_rng, RandomStream& prob_rng) {
  if (K < 1) throw std::invalid_argument("finite_support_build: K must be >= 1");
  if (m < 1) throw std::invalid_argument("finite_support_build: m must be >= 1");
  FiniteSupport support;
  while (support.atoms.size() < K) {
    Arrival atom;
    atom.request.resize(m);
    switch (law) {
      case AtomLaw::kUniform:
        atom.reward = atom_rng.uniform(0.0, 1.0);
        for (auto& ai : atom.request) ai = atom_rng.uniform(0.0, 3.0);
        break;
      case AtomLaw::kFoldedNormal:
        atom.reward = std::abs(atom_rng.normal(0.0, 1.0));
        for (auto& ai : atom.request) ai = std::abs(atom_rng.normal(1.0, 1.0));
        break;
      case AtomLaw::kExponential:
        atom.reward = atom_rng.exponential(1.0);
        for (auto& ai : atom.request) ai = atom_rng.exponential(2.0);
        break;
      case AtomLaw::kGamma:
        atom.reward = atom_rng.uniform(1.0, 2.0);
        for (auto& ai : atom.request) ai = atom_rng.gamma(2.0, 3.0);
        break;
    }
    bool duplicate = std::any_of(support.atoms.begin(), support.atoms.end(), [&](const Arrival& other) {
      return other.reward == atom.reward && other.request == atom.request;
    });
    if (!duplicate) support.atoms.push_back(std::move(atom));
  }
  support.probs.resize(K);
  double total = 0.0;
  for (auto& p : support.probs) {
    p = prob_rng.exponential(1.0);
    total += p;
  }
  for (auto& p : support.probs) p /= total;
  // Put the rounding residue on the largest weight so the sum is 1 to ~1 ulp.
  auto largest = std::max_element(support.probs.begin(), support.probs.end());
  double sum = 0.0;
  for (double p : support.probs) sum += p;
  *largest += 1.0 - sum;
  return support;
}

BoundsSpec derive_bounds(const DistributionSpec& spec, const ResourceSpec& resources) {
  BoundsSpec b;
  b.m = dimension(spec);
  std::visit(Overloaded{
                 [&](const ContinuousU1&) { b.request_bound = 2.0; b.reward_bound = 2.0; },
                 [&](const MultiSecretary&) { b.request_bound = 1.0; b.reward_bound = 1.0; },
                 [&](const BetaCont&) { b.request_bound = 1.0; b.reward_bound = 3.0; },
                 [&](const WideUniform&) { b.request_bound = 6.0; b.reward_bound = 3.0; },
                 [&](const Finite& s) {
                   double amax = 0.0, cmax = 0.0;
                   for (const auto& atom : s.support.atoms) {
                     cmax = std::max(cmax, std::abs(atom.reward));
                     for (double ai : atom.request) amax = std::max(amax, std::abs(ai));
                   }
                   // An all-zero support still needs positive bounds.
                   b.request_bound = amax > 0 ? amax : 1e-12;
                   b.reward_bound = cmax > 0 ? cmax : 1e-12;
                 },
                 [&](const Custom& s) {
                   b.request_bound = s.request_bound;
                   b.reward_bound = s.reward_bound;
                 },
             },
             spec);
  switch (resources.law) {
    case ResourceLaw::kUniform:
      b.resource_lower = 1.0 / 3.0;
      b.resource_upper = 2.0 / 3.0;
      break;
    case ResourceLaw::kFoldedNormal:
      b.resource_lower = 1.0 / 3.0;
      b.resource_upper = (1.0 + kFoldedNormalQuantile) / 3.0;
      b.high_probability_envelope = true;
      break;
    case ResourceLaw::kExponential:
      b.resource_lower = 1.0 / 3.0;
      b.resource_upper = (1.0 + kExponentialQuantile) / 3.0;
      b.high_probability_envelope = true;
      break;
    case ResourceLaw::kFixed:
      b.resource_lower = resources.value;
      b.resource_upper = resources.value;
      break;
  }
  b.validate();
  return b;
}

std::string finite_support_to_json(const FiniteSupport& support) {
  nlohmann::json j;
  j["atoms"] = nlohmann::json::array();
  for (const auto& atom : support.atoms) {
    j["atoms"].push_back({{"c", atom.reward}, {"a", atom.request}});
  }
  j["probs"] = support.probs;
  return j.dump();
}

FiniteSupport finite_support_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  FiniteSupport support;
  for (const auto& atom : j.at("atoms")) {
    support.atoms.push_back({atom.at("c").get<double>(), atom.at("a").get<Vector>()});
  }
  support.probs = j.at("probs").get<Vector>();
  support.validate();
  return support;
}

ArrivalSequence generate_arrivals(const DistributionSpec& spec, const MarketConfig& config) {
  RandomStream rng(config.seed, Stream::kArrivals);
  return sample_arrivals(spec, config.horizon, rng);
}

}  // namespace olp
