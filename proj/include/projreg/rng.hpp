#pragma once

#include <cstdint>
#include <random>

#include "projreg/dense_map.hpp"

namespace projreg {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Decorrelated seed for a named sub-stream of a base seed, so different
/// consumers (prior mean, noise, samples) never share an engine state.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

/// Deterministic generator with a pinned draw discipline: uniform consumes
/// one engine word, normal consumes exactly two uniforms (Box-Muller, no
/// cached second value), so outputs are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal();
  Vec normal_vec(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace projreg
