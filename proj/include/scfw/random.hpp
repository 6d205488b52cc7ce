#pragma once

#include <cstdint>

namespace scfw {

/**
 * Counter-based normal generator: the j-th uniform is
 * u_j = ((splitmix64(seed + (j + 1) * 0x9E3779B97F4A7C15) >> 11) + 0.5) * 2^-53,
 * which lies strictly inside (0, 1), and normals come in Box-Muller pairs
 * (sqrt(-2 ln u_{2i}) cos(2 pi u_{2i+1}), sqrt(-2 ln u_{2i}) sin(2 pi u_{2i+1})).
 * The stream is a pure function of (seed, draw index).
 */
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : seed_(seed) {}

  double uniform();
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace scfw
