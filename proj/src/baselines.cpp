#include "swgp/baselines.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swgp/errors.hpp"
#include "swgp/matrix.hpp"
#include "swgp/simd.hpp"

namespace swgp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_cutoff(double cutoff_hz, double fs_hz) {
  if (!(fs_hz > 0.0) || !(cutoff_hz > 0.0) || !(cutoff_hz < 0.5 * fs_hz))
    throw std::invalid_argument("filter design: need 0 < cutoff < fs/2");
}

}  // namespace

double Biquad::max_pole_radius() const {
  // Roots of z^2 + a1 z + a2.
  const double disc = a1 * a1 - 4.0 * a2;
  if (disc < 0.0) return std::sqrt(a2);
  const double r = std::sqrt(disc);
  return std::max(std::abs((-a1 + r) * 0.5), std::abs((-a1 - r) * 0.5));
}

IirFilter::IirFilter(std::vector<Biquad> sections)
    : sections_(std::move(sections)) {
  if (max_pole_radius() >= 1.0)
    throw NumericalError("iir design produced an unstable section");
}

double IirFilter::step(double x) {
  for (Biquad& s : sections_) x = s.step(x);
  return x;
}

void IirFilter::reset() {
  for (Biquad& s : sections_) s.reset();
}

double IirFilter::max_pole_radius() const {
  double r = 0.0;
  for (const Biquad& s : sections_) r = std::max(r, s.max_pole_radius());
  return r;
}

IirFilter first_order_lowpass(double cutoff_hz, double fs_hz) {
  check_cutoff(cutoff_hz, fs_hz);
  const double k = 2.0 * fs_hz;
  const double wa = k * std::tan(kPi * cutoff_hz / fs_hz);  // pre-warped
  const double d = k + wa;
  Biquad s;
  s.b0 = wa / d;
  s.b1 = wa / d;
  s.b2 = 0.0;
  s.a1 = (wa - k) / d;
  s.a2 = 0.0;
  return IirFilter({s});
}

IirFilter butterworth4(double cutoff_hz, double fs_hz) {
  check_cutoff(cutoff_hz, fs_hz);
  const double k = 2.0 * fs_hz;
  const double wa = k * std::tan(kPi * cutoff_hz / fs_hz);
  std::vector<Biquad> sections;
  for (int j = 0; j < 2; ++j) {
    // Damping of the two conjugate analog pole pairs.
    const double zeta = std::sin((2.0 * j + 1.0) * kPi / 8.0);
    const double d = k * k + 2.0 * zeta * wa * k + wa * wa;
    Biquad s;
    s.b0 = wa * wa / d;
    s.b1 = 2.0 * s.b0;
    s.b2 = s.b0;
    s.a1 = (2.0 * wa * wa - 2.0 * k * k) / d;
    s.a2 = (k * k - 2.0 * zeta * wa * k + wa * wa) / d;
    sections.push_back(s);
  }
  return IirFilter(std::move(sections));
}

FirFilter::FirFilter(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  buf_.assign(coeffs_.size(), 0.0);
}

FirFilter FirFilter::moving_average(std::size_t length) {
  if (length == 0) throw std::invalid_argument("moving_average: empty window");
  return FirFilter(std::vector<double>(length, 1.0 / static_cast<double>(length)));
}

FirFilter FirFilter::savitzky_golay(std::size_t length, int order) {
  if (order < 0 || length < static_cast<std::size_t>(order) + 1)
    throw std::invalid_argument("savitzky_golay: need length >= order + 1");
  const std::size_t p = static_cast<std::size_t>(order) + 1;
  const std::size_t n = length;
  // Positions scaled to [-1, 0] with the newest sample at 0, so the
  // evaluated fit at 0 is just the constant coefficient of the LSQ solution.
  const double scale = (n > 1) ? static_cast<double>(n - 1) : 1.0;
  Matrix v(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (static_cast<double>(i) - static_cast<double>(n - 1)) / scale;
    double pw = 1.0;
    for (std::size_t j = 0; j < p; ++j) {
      v(i, j) = pw;
      pw *= u;
    }
  }
  Matrix vtv(p, p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += v(i, a) * v(i, b);
      vtv(a, b) = acc;
    }
  auto factor = CholeskyFactor::compute(vtv);
  if (!factor) throw NumericalError("savitzky_golay: normal equations singular");
  // Weights w_i = e_0^T (V^T V)^{-1} V^T, one solve per basis row.
  std::vector<double> e0(p, 0.0);
  e0[0] = 1.0;
  const std::vector<double> m0 = factor->solve(e0);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = simd::scalar::dot(m0.data(), v.row(i), p);
  }
  return FirFilter(std::move(w));
}

double FirFilter::step(double x) {
  const std::size_t n = coeffs_.size();
  if (count_ < n) {
    buf_[count_++] = x;
    if (count_ < n) {
      // Partial window: running mean until the taps are fully populated.
      return simd::sum(buf_.data(), count_) / static_cast<double>(count_);
    }
  } else {
    buf_[head_] = x;
    head_ = (head_ + 1) % n;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += coeffs_[i] * buf_[(head_ + i) % n];
  }
  return acc;
}

void FirFilter::reset() {
  buf_.assign(coeffs_.size(), 0.0);
  head_ = 0;
  count_ = 0;
}

}  // namespace swgp
