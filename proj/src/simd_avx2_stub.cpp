#include "swgp/simd.hpp"

#include <cstdlib>

// Fallback for targets built without AVX2 support. available() reports false
// so the dispatcher never selects these; direct calls defer to the scalar
// reference implementations.

namespace swgp::simd::avx2 {

bool available() { return false; }

double dot(const double* a, const double* b, std::size_t n) {
  return scalar::dot(a, b, n);
}
double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  return scalar::dot3(a, b, c, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  scalar::axpy(alpha, x, y, n);
}
double sum(const double* a, std::size_t n) { return scalar::sum(a, n); }
void se_row(double* out, double t, const double* ts, std::size_t n,
            double inv_two_l2, double sf2) {
  scalar::se_row(out, t, ts, n, inv_two_l2, sf2);
}

}  // namespace swgp::simd::avx2
