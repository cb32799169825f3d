#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "swgp/baselines.hpp"
#include "swgp/rng.hpp"
#include "swgp/signal_lab.hpp"

using namespace swgp;

TEST_SUITE("baselines") {

TEST_CASE("designs reject out-of-range cutoffs") {
  CHECK_THROWS_AS(first_order_lowpass(0.0, 1000.0), std::invalid_argument);
  CHECK_THROWS_AS(first_order_lowpass(500.0, 1000.0), std::invalid_argument);
  CHECK_THROWS_AS(butterworth4(-1.0, 1000.0), std::invalid_argument);
  CHECK_NOTHROW(butterworth4(499.0, 1000.0));
}

TEST_CASE("all designs are stable") {
  for (double fc : {0.5, 5.0, 20.0, 100.0, 400.0}) {
    CHECK(first_order_lowpass(fc, 1000.0).max_pole_radius() < 1.0);
    CHECK(butterworth4(fc, 1000.0).max_pole_radius() < 1.0);
  }
}

TEST_CASE("first order: DC gain and impulse response") {
  auto f = first_order_lowpass(20.0, 1000.0);
  double y = 0.0;
  for (int i = 0; i < 5000; ++i) y = f.step(3.7);
  CHECK(y == doctest::Approx(3.7).epsilon(1e-9));

  // impulse: h[0] = c, h[n] = c (1 + a) a^{n-1} with the recursion
  // y[n] = a y[n-1] + c (x[n] + x[n-1])
  auto g = first_order_lowpass(20.0, 1000.0);
  const double wa = 2000.0 * std::tan(3.141592653589793 * 20.0 / 1000.0);
  const double c = wa / (2000.0 + wa);
  const double a = (2000.0 - wa) / (2000.0 + wa);
  std::vector<double> h;
  for (int n = 0; n < 40; ++n) h.push_back(g.step(n == 0 ? 1.0 : 0.0));
  CHECK(h[0] == doctest::Approx(c).epsilon(1e-12));
  for (int n = 1; n < 40; ++n) {
    CHECK(h[n] ==
          doctest::Approx(c * (1.0 + a) * std::pow(a, n - 1)).epsilon(1e-9));
  }
}

TEST_CASE("first order: half-power at the cutoff") {
  auto point = measure_response(
      [f = first_order_lowpass(20.0, 1000.0)](double, double y) mutable {
        return f.step(y);
      },
      20.0, 1000.0, 0.5, 0.5);
  CHECK(point.amplitude_ratio ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.02));
  CHECK(point.phase_rad == doctest::Approx(-3.141592653589793 / 4.0).epsilon(0.05));
}

TEST_CASE("butterworth4: DC gain, -3 dB cutoff, 4th-order rolloff") {
  auto f = butterworth4(20.0, 1000.0);
  double y = 0.0;
  for (int i = 0; i < 5000; ++i) y = f.step(-1.3);
  CHECK(y == doctest::Approx(-1.3).epsilon(1e-9));

  auto at_cutoff = measure_response(
      [g = butterworth4(20.0, 1000.0)](double, double v) mutable {
        return g.step(v);
      },
      20.0, 1000.0, 0.5, 0.5);
  CHECK(at_cutoff.amplitude_ratio ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.02));

  auto at_double = measure_response(
      [g = butterworth4(20.0, 1000.0)](double, double v) mutable {
        return g.step(v);
      },
      40.0, 1000.0, 0.5, 0.5);
  const double db = 20.0 * std::log10(at_double.amplitude_ratio);
  CHECK(db == doctest::Approx(-24.1).epsilon(0.05));  // within ~1 dB
}

TEST_CASE("moving average equals the naive window mean") {
  auto f = FirFilter::moving_average(20);
  CounterRng rng(60);
  std::vector<double> history;
  for (int i = 0; i < 300; ++i) {
    const double x = rng.uniform(-5, 5);
    history.push_back(x);
    const double got = f.step(x);
    const std::size_t n = std::min<std::size_t>(history.size(), 20);
    double mean = 0.0;
    for (std::size_t k = history.size() - n; k < history.size(); ++k)
      mean += history[k];
    mean /= static_cast<double>(n);
    CHECK(got == doctest::Approx(mean).epsilon(1e-12));
  }
  double s = 0.0;
  for (double c : f.coefficients()) s += c;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant streams pass through both FIR filters") {
  auto ma = FirFilter::moving_average(15);
  auto sg = FirFilter::savitzky_golay(15, 3);
  double yma = 0, ysg = 0;
  for (int i = 0; i < 50; ++i) {
    yma = ma.step(2.5);
    ysg = sg.step(2.5);
  }
  CHECK(yma == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(ysg == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("savitzky-golay reproduces cubics exactly, moving average does not") {
  const std::size_t n = 21;
  auto sg = FirFilter::savitzky_golay(n, 3);
  auto ma = FirFilter::moving_average(n);
  auto poly = [](double t) { return 2.0 + 0.5 * t - 0.3 * t * t + 0.07 * t * t * t; };
  double ysg = 0, yma = 0, t_last = 0;
  for (int i = 0; i < 100; ++i) {
    const double t = i * 0.1;
    t_last = t;
    ysg = sg.step(poly(t));
    yma = ma.step(poly(t));
  }
  CHECK(std::abs(ysg - poly(t_last)) < 1e-9);
  CHECK(std::abs(yma - poly(t_last)) > 1e-3);
}

TEST_CASE("savitzky-golay reproduces all polynomial degrees up to its order") {
  CounterRng rng(61);
  for (int order = 0; order <= 3; ++order) {
    auto sg = FirFilter::savitzky_golay(12, order);
    std::vector<double> coef(order + 1);
    for (auto& c : coef) c = rng.uniform(-1, 1);
    auto poly = [&](double t) {
      double acc = 0, pw = 1;
      for (double c : coef) {
        acc += c * pw;
        pw *= t;
      }
      return acc;
    };
    double y = 0, t_last = 0;
    for (int i = 0; i < 40; ++i) {
      t_last = i * 0.05;
      y = sg.step(poly(t_last));
    }
    CHECK(std::abs(y - poly(t_last)) < 1e-9);
  }
  CHECK_THROWS_AS(FirFilter::savitzky_golay(3, 3), std::invalid_argument);
}

TEST_CASE("FIR filters respect superposition") {
  CounterRng rng(62);
  auto fa = FirFilter::savitzky_golay(9, 2);
  auto fb = FirFilter::savitzky_golay(9, 2);
  auto fc = FirFilter::savitzky_golay(9, 2);
  const double a = 0.7, b = -1.9;
  for (int i = 0; i < 60; ++i) {
    const double x1 = rng.uniform(-1, 1), x2 = rng.uniform(-1, 1);
    const double y1 = fa.step(x1);
    const double y2 = fb.step(x2);
    const double yc = fc.step(a * x1 + b * x2);
    CHECK(std::abs(yc - (a * y1 + b * y2)) < 1e-12);
  }
}

TEST_CASE("measured responses match analytic transfer functions") {
  // |H| of the bilinear designs at the discrete frequencies
  auto analytic_first = [](double f, double fc, double fs) {
    const double wa = 2.0 * fs * std::tan(3.141592653589793 * fc / fs);
    const double w = 2.0 * fs * std::tan(3.141592653589793 * f / fs);
    return 1.0 / std::sqrt(1.0 + (w / wa) * (w / wa));
  };
  auto analytic_butter4 = [](double f, double fc, double fs) {
    const double wa = 2.0 * fs * std::tan(3.141592653589793 * fc / fs);
    const double w = 2.0 * fs * std::tan(3.141592653589793 * f / fs);
    return 1.0 / std::sqrt(1.0 + std::pow(w / wa, 8.0));
  };
  for (double f : {0.5, 2.0, 8.0, 20.0, 45.0, 90.0}) {
    auto p1 = measure_response(
        [g = first_order_lowpass(20.0, 1000.0)](double, double v) mutable {
          return g.step(v);
        },
        f, 1000.0, std::max(2.0 / f, 0.2), std::max(2.0 / f, 0.25));
    CHECK(p1.amplitude_ratio ==
          doctest::Approx(analytic_first(f, 20.0, 1000.0)).epsilon(0.02));
    auto p4 = measure_response(
        [g = butterworth4(20.0, 1000.0)](double, double v) mutable {
          return g.step(v);
        },
        f, 1000.0, std::max(4.0 / f, 0.5), std::max(2.0 / f, 0.25));
    const double want = analytic_butter4(f, 20.0, 1000.0);
    CHECK(std::abs(p4.amplitude_ratio - want) < 0.02 * std::max(want, 0.05));
  }
}

}  // TEST_SUITE
