#include "projreg/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace projreg::kernels {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  for (; i + 2 <= n; i += 2) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sumsq_neon(const double* a, std::size_t n) { return dot_neon(a, a, n); }

void axpy_neon(double s, const double* x, double* y, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), vs, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += s * x[i];
}

void scal_neon(double s, double* x, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(x + i, vmulq_f64(vs, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) x[i] *= s;
}

void rot_neon(double* x, double* y, double c, double s, std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    vst1q_f64(x + i, vfmaq_f64(vmulq_f64(vs, vy), vc, vx));
    vst1q_f64(y + i, vfmsq_f64(vmulq_f64(vc, vy), vs, vx));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi + s * yi;
    y[i] = c * yi - s * xi;
  }
}

}  // namespace

const Table* neon_table() noexcept {
  static const Table table{"neon", dot_neon, sumsq_neon,
                           axpy_neon, scal_neon, rot_neon};
  return &table;
}

}  // namespace projreg::kernels

#else

namespace projreg::kernels {

const Table* neon_table() noexcept { return nullptr; }

}  // namespace projreg::kernels

#endif
