#include "specdpp/random.hpp"

namespace specdpp {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t replica) {
  return splitmix64(splitmix64(seed) ^ splitmix64(replica + 0x632be59bd9b4e019ULL));
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t replica)
    : seed_(seed), replica_(replica), engine_(derive_stream_seed(seed, replica)) {}

double RandomStream::uniform() {
  double u = uniform_(engine_);
  // libstdc++ can round up to exactly 1.0
  while (u >= 1.0) u = uniform_(engine_);
  return u;
}

double RandomStream::normal() { return normal_(engine_); }

}  // namespace specdpp
