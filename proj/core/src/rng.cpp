#include "kpdkit/rng.hpp"

namespace kpdkit {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

RngStream::RngStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

RngStream RngStream::for_restart(std::uint64_t root, std::uint64_t index) {
  return RngStream(splitmix64(root) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace kpdkit
