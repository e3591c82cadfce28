#pragma once

#include <cstdint>
#include <random>

namespace rwrs {

/// Tags that separate the independent generator streams of one replicate.
enum class StreamTag : std::uint64_t {
  Walk = 1,
  Scenery = 2,
  Brownian = 3,
  NoisePlus = 4,
  NoiseMinus = 5,
  Auxiliary = 6,
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of the stream (master, index, tag). Distinct triples give
/// statistically independent streams; the mapping never depends on
/// scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, StreamTag tag);

/// A seeded 64-bit Mersenne Twister with uniform and Gaussian draws.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}
  RandomStream(std::uint64_t master, std::uint64_t index, StreamTag tag)
      : RandomStream(derive_seed(master, index, tag)) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal() { return normal_(engine_); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uint64_t seed_;
};

}  // namespace rwrs
