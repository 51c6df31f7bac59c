#pragma once

#include <cstdint>
#include <random>

namespace specdpp {

/// 64-bit mix of (seed, replica) used to seed an independent stream per replica.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t replica);

/// Single-owner random stream. Identical (seed, replica) pairs reproduce the
/// identical draw sequence; streams are never shared between threads.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t replica);

  double uniform();  // [0, 1)
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t replica() const { return replica_; }

 private:
  std::uint64_t seed_;
  std::uint64_t replica_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace specdpp
