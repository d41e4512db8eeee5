#pragma once

#include <cstdint>

namespace qbat {

/// Splittable counter-style generator (SplitMix64). Streams derived with
/// split() are statistically independent of each other and of the parent,
/// so per-realization substreams do not depend on scheduling or thread count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    return finalize(z);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Child stream addressed by an index; independent of calls on the parent.
  SplitMix64 split(std::uint64_t stream) const {
    return SplitMix64(finalize(state_ + 0x9E3779B97F4A7C15ULL * (stream + 1) +
                               0x632BE59BD9B4E019ULL));
  }

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Deterministic seed for one (parameter index, realization index) cell of a
/// sweep. Independent of worker count and evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t param_idx,
                                 std::uint64_t realization_idx) {
  return SplitMix64(master).split(param_idx).split(realization_idx).next();
}

}  // namespace qbat
