#include "swgp/matrix.hpp"

#include <cassert>
#include <cmath>

#include "swgp/simd.hpp"

namespace swgp {

std::optional<CholeskyFactor> CholeskyFactor::compute(const Matrix& a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* lj = l.row(j);
    double d = a(j, j) - simd::dot(lj, lj, j);
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    const double djj = std::sqrt(d);
    l(j, j) = djj;
    const double inv = 1.0 / djj;
    for (std::size_t i = j + 1; i < n; ++i) {
      l(i, j) = (a(i, j) - simd::dot(l.row(i), lj, j)) * inv;
    }
  }
  return CholeskyFactor(std::move(l));
}

void CholeskyFactor::solve_in_place(std::span<double> b) const {
  const std::size_t n = size();
  assert(b.size() == n);
  // L z = b
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = (b[i] - simd::dot(l_.row(i), b.data(), i)) / l_(i, i);
  }
  // L^T x = z, saxpy form so row accesses stay contiguous.
  for (std::size_t j = n; j-- > 0;) {
    b[j] /= l_(j, j);
    simd::axpy(-b[j], l_.row(j), b.data(), j);
  }
}

std::vector<double> CholeskyFactor::solve(std::span<const double> b) const {
  std::vector<double> x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

double CholeskyFactor::log_det() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) acc += std::log(l_(i, i));
  return 2.0 * acc;
}

Matrix CholeskyFactor::inverse() const {
  const std::size_t n = size();
  Matrix inv(n, n);
  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    // Forward solve of e_j: the first j entries stay zero.
    col.assign(n, 0.0);
    col[j] = 1.0 / l_(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      col[i] = -simd::dot(l_.row(i) + j, col.data() + j, i - j) / l_(i, i);
    }
    for (std::size_t k = n; k-- > 0;) {
      col[k] /= l_(k, k);
      simd::axpy(-col[k], l_.row(k), col.data(), k);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

std::vector<double> matvec(const Matrix& m, std::span<const double> v) {
  assert(v.size() == m.cols());
  std::vector<double> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out[i] = simd::dot(m.row(i), v.data(), v.size());
  }
  return out;
}

}  // namespace swgp
