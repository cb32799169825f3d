#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "swgp/baselines.hpp"
#include "swgp/signal_lab.hpp"

using namespace swgp;

TEST_SUITE("signal_lab") {

TEST_CASE("constant zero signal without noise is all zeros") {
  SignalSpec spec;
  spec.kind = SignalSpec::Kind::constant;
  spec.constant_value = 0.0;
  spec.duration_s = 0.1;
  auto s = generate(spec);
  REQUIRE(s.size() == 100);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s.clean[i] == 0.0);
    CHECK(s.noisy[i] == 0.0);
  }
}

TEST_CASE("1 Hz sine at 1 kHz: sample 250 is the peak") {
  SignalSpec spec;
  spec.kind = SignalSpec::Kind::sine;
  spec.frequency_hz = 1.0;
  spec.duration_s = 1.0;
  auto s = generate(spec);
  REQUIRE(s.size() == 1000);
  CHECK(s.clean[250] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.t[250] == doctest::Approx(0.25));
}

TEST_CASE("streams are bitwise deterministic in the seed") {
  SignalSpec spec;
  spec.noise = {NoiseSpec::Kind::gaussian, 0.5};
  spec.seed = 1234;
  spec.duration_s = 0.25;
  auto a = generate(spec);
  auto b = generate(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.noisy[i] == b.noisy[i]);

  spec.seed = 1235;
  auto c = generate(spec);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= (a.noisy[i] != c.noisy[i]);
  CHECK(differs);
}

TEST_CASE("gaussian noise statistics over one million draws") {
  SignalSpec spec;
  spec.kind = SignalSpec::Kind::constant;
  spec.constant_value = 0.0;
  spec.noise = {NoiseSpec::Kind::gaussian, std::sqrt(0.1)};
  spec.duration_s = 1000.0;  // 1e6 samples
  spec.seed = 7;
  auto s = generate(spec);
  REQUIRE(s.size() == 1000000);
  double mean = 0;
  for (double v : s.noisy) mean += v;
  mean /= static_cast<double>(s.size());
  double var = 0;
  for (double v : s.noisy) var += (v - mean) * (v - mean);
  var /= static_cast<double>(s.size() - 1);
  CHECK(std::abs(var - 0.1) < 0.001);  // within 1%
  CHECK(std::abs(mean) < 4.0 * std::sqrt(0.1) / 1000.0);
}

TEST_CASE("uniform noise stays inside its bounds with the right variance") {
  SignalSpec spec;
  spec.kind = SignalSpec::Kind::constant;
  spec.noise = {NoiseSpec::Kind::uniform, 0.5 * std::sqrt(0.1)};
  spec.duration_s = 200.0;
  spec.seed = 8;
  auto s = generate(spec);
  const double b = 0.5 * std::sqrt(0.1);
  double var = 0;
  for (double v : s.noisy) {
    CHECK(std::abs(v) <= b);
    var += v * v;
  }
  var /= static_cast<double>(s.size());
  CHECK(var == doctest::Approx(b * b / 3.0).epsilon(0.03));
}

TEST_CASE("chirp phase law") {
  SignalSpec spec;
  spec.kind = SignalSpec::Kind::chirp;
  spec.frequency_hz = 1.0;
  spec.chirp_rate_hz_per_s = 2.0;
  spec.duration_s = 0.5;
  auto s = generate(spec);
  const double t = s.t[300];
  CHECK(s.clean[300] ==
        doctest::Approx(std::sin(2.0 * 3.141592653589793 *
                                 (1.0 * t + 0.5 * 2.0 * t * t)))
            .epsilon(1e-12));
}

TEST_CASE("identity filter measures amplitude 1, phase 0") {
  auto p = measure_response([](double, double y) { return y; }, 5.0, 1000.0,
                            0.2, 0.5);
  CHECK(p.amplitude_ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(p.phase_rad) < 1e-9);
  CHECK(p.fit_residual_ratio < 1e-9);
  CHECK(p.sinusoidal);
}

TEST_CASE("measure_response validates its window") {
  CHECK_THROWS_AS(
      measure_response([](double, double y) { return y; }, 5.0, 1000.0, 0.0, 0.1),
      std::invalid_argument);
}

TEST_CASE("log_spaced endpoints and count") {
  auto f = log_spaced(0.01, 100.0, 25);
  REQUIRE(f.size() == 25);
  CHECK(f.front() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(f.back() == doctest::Approx(100.0).epsilon(1e-12));
  for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] > f[i - 1]);
}

TEST_CASE("mse_sweep: identity filter under zero noise has zero error") {
  MseSweepOptions opt;
  opt.repetitions = 2;
  opt.duration_s = 0.2;
  const std::vector<double> freqs{5.0, 20.0};
  auto rows = mse_sweep([]() { return [](double, double y) { return y; }; },
                        freqs, NoiseSpec{}, 1, opt);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.mse_mean == 0.0);
    CHECK(r.mse_std == 0.0);
  }
}

TEST_CASE("mse_sweep: identity filter on pure noise recovers the noise variance") {
  MseSweepOptions opt;
  opt.repetitions = 4;
  opt.duration_s = 2.0;
  opt.amplitude = 0.0;  // clean signal is zero
  const std::vector<double> freqs{10.0};
  NoiseSpec noise{NoiseSpec::Kind::gaussian, std::sqrt(0.1)};
  auto rows = mse_sweep([]() { return [](double, double y) { return y; }; },
                        freqs, noise, 3, opt);
  CHECK(rows[0].mse_mean == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("mse_sweep: moving average on pure noise attenuates by the window") {
  MseSweepOptions opt;
  opt.repetitions = 4;
  opt.duration_s = 4.0;
  opt.amplitude = 0.0;
  const std::vector<double> freqs{10.0};
  NoiseSpec noise{NoiseSpec::Kind::gaussian, std::sqrt(0.1)};
  auto rows = mse_sweep(
      []() {
        return [f = FirFilter::moving_average(200)](double, double y) mutable {
          return f.step(y);
        };
      },
      freqs, noise, 3, opt);
  // steady state variance sigma^2/200, inflated slightly by the fill-in
  CHECK(rows[0].mse_mean == doctest::Approx(0.1 / 200.0).epsilon(0.2));
}

TEST_CASE("mse_sweep results are reproducible for a fixed seed") {
  MseSweepOptions opt;
  opt.repetitions = 2;
  opt.duration_s = 0.3;
  const std::vector<double> freqs{5.0};
  NoiseSpec noise{NoiseSpec::Kind::gaussian, 0.3};
  auto factory = []() {
    return [f = first_order_lowpass(20.0, 1000.0)](double, double y) mutable {
      return f.step(y);
    };
  };
  auto a = mse_sweep(factory, freqs, noise, 99, opt);
  auto b = mse_sweep(factory, freqs, noise, 99, opt);
  CHECK(a[0].mse_mean == b[0].mse_mean);
  CHECK(a[0].mse_std == b[0].mse_std);
}

}  // TEST_SUITE
