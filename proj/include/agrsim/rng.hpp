#ifndef AGRSIM_RNG_HPP
#define AGRSIM_RNG_HPP

#include <cstdint>

namespace agrsim {

/// Counter-based random stream keyed by (experiment seed, stream key).
///
/// Draw i is a pure function of (seed, key, i): the stream key is mixed once
/// into a base state, and each draw applies the SplitMix64 finalizer to
/// base + (i + 1) * golden-gamma. Streams therefore never share state, and a
/// stream's sequence does not depend on how draws from other streams are
/// interleaved with it.
///
/// All derived distributions are computed here with explicit integer/bit
/// arithmetic (no <random> distributions, whose output is
/// implementation-defined).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t key);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 bits of resolution.
  double uniform01();

  /// Uniform double in (0, 1].
  double uniform_open_closed();

  /// Uniform integer in [lo, hi] (unbiased, by rejection). Requires lo <= hi.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t draws() const { return counter_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

}  // namespace agrsim

#endif  // AGRSIM_RNG_HPP
