#pragma once

#include <cstddef>

// Data-parallel inner loops used by the dense linear-algebra layer.
//
// Every kernel exists as a scalar reference implementation and, where the
// build target supports it, as a SIMD variant (AVX2+FMA on x86-64, NEON on
// aarch64). The active table is picked once at startup from runtime CPU
// detection; PROJREG_KERNELS={auto,scalar,avx2,neon} overrides the choice.
// SIMD variants may reassociate sums, so results can differ from the scalar
// path at rounding level; within one process the selected path is fixed,
// which keeps whole-pipeline outputs bit-reproducible run over run.

namespace projreg::kernels {

struct Table {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sumsq)(const double* a, std::size_t n);
  // y <- y + s*x
  void (*axpy)(double s, const double* x, double* y, std::size_t n);
  // x <- s*x
  void (*scal)(double s, double* x, std::size_t n);
  // plane rotation: x <- c*x + s*y, y <- -s*x + c*y (applied jointly)
  void (*rot)(double* x, double* y, double c, double s, std::size_t n);
};

const Table& scalar_table() noexcept;

// Null when the variant is unavailable (wrong arch or missing CPU feature).
const Table* avx2_table() noexcept;
const Table* neon_table() noexcept;

// The dispatched table. Resolved once, thread-safe.
const Table& active() noexcept;

inline double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
inline double sumsq(const double* a, std::size_t n) {
  return active().sumsq(a, n);
}
inline void axpy(double s, const double* x, double* y, std::size_t n) {
  active().axpy(s, x, y, n);
}
inline void scal(double s, double* x, std::size_t n) {
  active().scal(s, x, n);
}
inline void rot(double* x, double* y, double c, double s, std::size_t n) {
  active().rot(x, y, c, s, n);
}

}  // namespace projreg::kernels
