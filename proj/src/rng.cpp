#include "projreg/rng.hpp"

#include <cmath>
#include <numbers>

namespace projreg {

double Rng::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Vec Rng::normal_vec(std::size_t n) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = normal();
  return v;
}

}  // namespace projreg
