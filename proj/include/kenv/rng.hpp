#pragma once

#include <cstdint>
#include <random>

namespace kenv {

/// Deterministic random stream with explicit variate transforms.
///
/// std::normal_distribution and friends are implementation-defined, so the
/// transforms here are spelled out (Box-Muller, inverse-CDF exponential) to
/// keep every draw reproducible from the seed alone. Substreams are derived
/// from the original seed and a tag, independent of how much the parent has
/// consumed, so parallel replications can own disjoint streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform();
  double uniform(double a, double b);

  /// Standard normal via Box-Muller (one variate per pair of uniforms).
  double normal();

  /// Exponential with the given rate (mean 1/rate).
  double exponential(double rate);

  /// Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t bounded(std::uint64_t n);

  /// Independent stream keyed by (original seed, tag).
  Rng substream(std::uint64_t tag) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used for seed mixing.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace kenv
