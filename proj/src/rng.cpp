#include "agrsim/rng.hpp"

#include <limits>
#include <stdexcept>

namespace agrsim {

RngStream::RngStream(std::uint64_t seed, std::uint64_t key)
    : seed_(seed), key_(key), base_(mix64(mix64(seed) ^ (key * kGoldenGamma + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(base_ + counter_ * kGoldenGamma);
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open_closed() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
  const std::uint64_t range = hi - lo;
  if (range == std::numeric_limits<std::uint64_t>::max()) return next_u64();
  const std::uint64_t n = range + 1;
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= threshold) return lo + x % n;
  }
}

}  // namespace agrsim
