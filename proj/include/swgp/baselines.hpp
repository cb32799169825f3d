#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace swgp {

// One second-order section, transposed direct form II.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
  double s1 = 0.0, s2 = 0.0;

  double step(double x) {
    const double y = b0 * x + s1;
    s1 = b1 * x - a1 * y + s2;
    s2 = b2 * x - a2 * y;
    return y;
  }
  void reset() { s1 = s2 = 0.0; }
  double max_pole_radius() const;
};

// IIR filter as a biquad cascade. Designs verify stability (all pole radii
// strictly inside the unit circle) at construction.
class IirFilter {
 public:
  explicit IirFilter(std::vector<Biquad> sections);

  double step(double x);
  void reset();
  double max_pole_radius() const;
  const std::vector<Biquad>& sections() const { return sections_; }

 private:
  std::vector<Biquad> sections_;
};

// Bilinear transform of 1/(1 + s/w_c) with frequency pre-warping; unit DC
// gain. Requires 0 < cutoff_hz < fs_hz/2.
IirFilter first_order_lowpass(double cutoff_hz, double fs_hz);

// 4th-order Butterworth low-pass as two biquads (maximally flat analog
// prototype, pre-warped bilinear transform).
IirFilter butterworth4(double cutoff_hz, double fs_hz);

// Causal FIR over the last `length` samples: output = c^T window (oldest to
// newest). Until the window fills, the mean of the available samples is
// returned.
class FirFilter {
 public:
  static FirFilter moving_average(std::size_t length);
  // Least-squares polynomial fit evaluated at the newest sample (causal
  // endpoint convention). Requires length >= order + 1.
  static FirFilter savitzky_golay(std::size_t length, int order = 3);

  double step(double x);
  void reset();
  std::span<const double> coefficients() const { return coeffs_; }
  std::size_t length() const { return coeffs_.size(); }

 private:
  explicit FirFilter(std::vector<double> coeffs);
  std::vector<double> coeffs_;
  std::vector<double> buf_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
};

}  // namespace swgp
