#pragma once

#include <cstdint>
#include <random>

namespace kpdkit {

/// Seeded uniform stream: mt19937_64 with a hand-rolled 53-bit conversion.
/// A seed gives the same doubles on every standard library.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Independent stream for restart `index` under `root`. Adding restarts
  /// never changes the streams of earlier ones.
  static RngStream for_restart(std::uint64_t root, std::uint64_t index);

  /// Uniform on [0, 1).
  double uniform();

 private:
  std::mt19937_64 engine_;
};

}  // namespace kpdkit
