#pragma once

#include <cstdint>
#include <string_view>

namespace fieldrank::rng {

/// splitmix64 finalizer: the 64-bit avalanche at the heart of the generator.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Inverse of the standard normal CDF (Wichura's AS 241, PPND16 variant).
/// Accurate to ~1 ulp over p in (0,1).
double normal_icdf(double p);

/// Counter-based deterministic generator ("splitmix64-counter/1").
///
/// The generator is stateless: output i of stream s under seed k is
/// mix64(key(k,s) + i*phi) with phi the 64-bit golden ratio. Streams are
/// independent by construction, so concurrent consumers draw from disjoint
/// (stream, counter) lanes and results never depend on scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(mix64(seed) ^ (stream * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ + counter * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform in the open interval (0,1).
  double uniform01(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via inverse-CDF: one uniform per variate, no rejection.
  double normal(std::uint64_t counter) const { return normal_icdf(uniform01(counter)); }

  /// +1 or -1 with equal probability.
  double rademacher(std::uint64_t counter) const {
    return (bits(counter) >> 63) ? 1.0 : -1.0;
  }

 private:
  std::uint64_t key_;
};

/// FNV-1a over a string, for deriving per-experiment stream ids.
inline std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Per-row seed for sweep harnesses: hash(master_seed, experiment_id, row).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view experiment_id,
                                 std::uint64_t row) {
  return mix64(mix64(master ^ hash_string(experiment_id)) + row);
}

}  // namespace fieldrank::rng
