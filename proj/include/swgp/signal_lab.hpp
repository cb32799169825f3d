#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace swgp {

struct NoiseSpec {
  enum class Kind { none, gaussian, uniform };
  Kind kind = Kind::none;
  // gaussian: standard deviation; uniform: half-width b of [-b, b].
  double param = 0.0;
};

struct SignalSpec {
  enum class Kind { constant, sine, chirp, custom };
  Kind kind = Kind::sine;
  double amplitude = 1.0;
  double frequency_hz = 1.0;        // sine frequency / chirp start frequency
  double chirp_rate_hz_per_s = 0.0; // instantaneous f(t) = f0 + rate*t
  double constant_value = 0.0;
  double fs_hz = 1000.0;
  double duration_s = 1.0;
  NoiseSpec noise;
  std::uint64_t seed = 0;
  std::vector<double> custom_samples;  // kind == custom
};

struct SampleStream {
  std::vector<double> t, clean, noisy;
  std::size_t size() const { return t.size(); }
};

// Deterministic given spec.seed; clean + noise == noisy exactly.
SampleStream generate(const SignalSpec& spec);

struct BodePoint {
  double frequency_hz = 0.0;
  double amplitude_ratio = 0.0;
  double phase_rad = 0.0;  // in (-pi, pi]
  // RMS residual of the sinusoid fit relative to the fitted amplitude; above
  // 0.2 the response is flagged non-sinusoidal (expected for adaptive runs).
  double fit_residual_ratio = 0.0;
  bool sinusoidal = true;
};

// Streaming filter protocol: consume the sample at time t, return the
// current estimate.
using StepFilter = std::function<double(double t, double y)>;
using FilterFactory = std::function<StepFilter()>;

// Drives the filter with a unit sinusoid at f_hz, discards settle_s seconds,
// then least-squares fits A sin + B cos + C to the output.
BodePoint measure_response(const StepFilter& filter, double f_hz, double fs_hz,
                           double settle_s, double measure_s,
                           double amplitude = 1.0);

// settle = max(2/f, window/fs) as used by the response sweeps.
double default_settle_s(double f_hz, std::size_t window, double fs_hz);

std::vector<double> log_spaced(double lo, double hi, std::size_t count);

struct MseResult {
  double frequency_hz = 0.0;
  double mse_mean = 0.0;
  double mse_std = 0.0;
};

struct MseSweepOptions {
  double duration_s = 1.0;
  int repetitions = 20;
  // Below 1 Hz a 1 s run covers under one period; unless strict_duration is
  // set, runs are extended to at least two periods.
  bool strict_duration = false;
  double amplitude = 1.0;
};

// MSE between the filtered output and the clean signal, fresh filter and
// fresh noise stream per (frequency, repetition); parallelized across pairs
// with deterministic merging.
std::vector<MseResult> mse_sweep(const FilterFactory& factory,
                                 std::span<const double> frequencies,
                                 const NoiseSpec& noise, std::uint64_t seed,
                                 const MseSweepOptions& options);

}  // namespace swgp
