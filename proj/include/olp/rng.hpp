// Counter-based random streams.
//
// Every random quantity in the lab is drawn from Philox4x32-10 (Salmon et
// al., "Parallel random numbers: as easy as 1, 2, 3"). The 64-bit master
// seed is the Philox key; the 128-bit counter holds (block index, stream
// id), so each named substream is an independent sequence and its output
// depends only on (seed, stream, position), never on call order elsewhere.
//
// Variates use fixed, documented transforms so that other implementations
// can reproduce distributions exactly:
//   uniform      53 high bits of a 64-bit word, scaled by 2^-53
//   normal       Box-Muller, second variate cached
//   exponential  -mean * log(u), u in (0, 1)
//   gamma        Marsaglia-Tsang squeeze/rejection; shape < 1 via the
//                u^(1/shape) boost
//   beta         X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b)
#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace olp {

/// Philox4x32 with 10 rounds.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Named substreams of a master seed.
enum class Stream : std::uint64_t {
  kArrivals = 1,
  kResources = 2,
  kAtoms = 3,
  kProbabilities = 4,
  kTest = 99,
};

/// SplitMix64 finaliser folded over the given words. Used to derive
/// per-trial seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, Stream stream)
      : RandomStream(seed, static_cast<std::uint64_t>(stream)) {}
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  double exponential(double mean);
  double gamma(double shape, double scale);
  double beta(double a, double b);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t position() const { return block_ * 2 + (2 - remaining_); }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int remaining_ = 0;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace olp
