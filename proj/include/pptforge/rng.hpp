// Deterministic, platform-independent pseudo-randomness for sweeps and
// property tests.  std::uniform_real_distribution is implementation-defined,
// so reproducible byte-identical output requires rolling the mapping by hand.

#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

#include "pptforge/spectra.hpp"

namespace pptforge {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1].
  double uniform01() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

/// Uniform sample from the probability simplex via exponential spacings,
/// sorted ascending on construction.
inline SchmidtVector sample_simplex(int d, SplitMix64& rng) {
  std::vector<double> e(d);
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    e[i] = -std::log(rng.uniform01()) + 1e-12;
    sum += e[i];
  }
  for (double& v : e) v /= sum;
  return SchmidtVector(std::move(e));
}

}  // namespace pptforge
