#include "swgp/simd.hpp"

#include <cmath>

namespace swgp::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i] * c[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

void se_row(double* out, double t, const double* ts, std::size_t n,
            double inv_two_l2, double sf2) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = t - ts[i];
    out[i] = sf2 * std::exp(-d * d * inv_two_l2);
  }
}

}  // namespace swgp::simd::scalar
