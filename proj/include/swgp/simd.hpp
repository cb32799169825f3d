#pragma once

#include <cstddef>

// Data-parallel inner loops used by the dense linear algebra and kernel
// evaluation layers. Every operation has a scalar reference implementation
// and (on x86-64) an AVX2+FMA variant; the dispatched entry points below
// select one implementation per process at first use.
//
// Selection order: the SWGP_SIMD environment variable ("scalar" or "avx2")
// wins, otherwise the best variant the CPU supports. The AVX2 exp differs
// from libm by a couple of ulp, so cross-variant comparisons are exact only
// to ~1e-14 relative; within one process results are deterministic.

namespace swgp::simd {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n);
// sum_i a[i]*b[i]*c[i]
double dot3(const double* a, const double* b, const double* c, std::size_t n);
// y += alpha*x
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* a, std::size_t n);
// out[i] = sf2 * exp(-(t - ts[i])^2 * inv_two_l2)
void se_row(double* out, double t, const double* ts, std::size_t n,
            double inv_two_l2, double sf2);

}  // namespace scalar

namespace avx2 {

// False when the binary was built without AVX2 support or the CPU lacks
// AVX2/FMA. Calling the kernels when unavailable is undefined.
bool available();

double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* a, std::size_t n);
void se_row(double* out, double t, const double* ts, std::size_t n,
            double inv_two_l2, double sf2);

}  // namespace avx2

struct Ops {
  double (*dot)(const double*, const double*, std::size_t);
  double (*dot3)(const double*, const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  void (*se_row)(double*, double, const double*, std::size_t, double, double);
  const char* name;
};

const Ops& active();

inline double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
inline double dot3(const double* a, const double* b, const double* c,
                   std::size_t n) {
  return active().dot3(a, b, c, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}
inline double sum(const double* a, std::size_t n) { return active().sum(a, n); }
inline void se_row(double* out, double t, const double* ts, std::size_t n,
                   double inv_two_l2, double sf2) {
  active().se_row(out, t, ts, n, inv_two_l2, sf2);
}

}  // namespace swgp::simd
