#include "swgp/signal_lab.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swgp/matrix.hpp"
#include "swgp/parallel.hpp"
#include "swgp/rng.hpp"

namespace swgp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double clean_value(const SignalSpec& spec, double t, std::size_t index) {
  switch (spec.kind) {
    case SignalSpec::Kind::constant:
      return spec.constant_value;
    case SignalSpec::Kind::sine:
      return spec.amplitude * std::sin(kTwoPi * spec.frequency_hz * t);
    case SignalSpec::Kind::chirp:
      return spec.amplitude *
             std::sin(kTwoPi * (spec.frequency_hz * t +
                                0.5 * spec.chirp_rate_hz_per_s * t * t));
    case SignalSpec::Kind::custom:
      return spec.custom_samples.at(index);
  }
  return 0.0;
}

double noise_value(const NoiseSpec& noise, CounterRng& rng) {
  switch (noise.kind) {
    case NoiseSpec::Kind::none:
      return 0.0;
    case NoiseSpec::Kind::gaussian:
      return rng.normal(0.0, noise.param);
    case NoiseSpec::Kind::uniform:
      return rng.uniform(-noise.param, noise.param);
  }
  return 0.0;
}

}  // namespace

SampleStream generate(const SignalSpec& spec) {
  if (!(spec.fs_hz > 0.0) || !(spec.duration_s > 0.0))
    throw std::invalid_argument("generate: fs and duration must be positive");
  const auto n = spec.kind == SignalSpec::Kind::custom
                     ? spec.custom_samples.size()
                     : static_cast<std::size_t>(
                           std::llround(spec.duration_s * spec.fs_hz));
  SampleStream out;
  out.t.resize(n);
  out.clean.resize(n);
  out.noisy.resize(n);
  CounterRng rng(spec.seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / spec.fs_hz;
    out.t[i] = t;
    out.clean[i] = clean_value(spec, t, i);
    out.noisy[i] = out.clean[i] + noise_value(spec.noise, rng);
  }
  return out;
}

double default_settle_s(double f_hz, std::size_t window, double fs_hz) {
  return std::max(2.0 / f_hz, static_cast<double>(window) / fs_hz);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("log_spaced: bad range");
  std::vector<double> out(count);
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, llo + (lhi - llo) * static_cast<double>(i) /
                                      static_cast<double>(count - 1));
  }
  return out;
}

BodePoint measure_response(const StepFilter& filter, double f_hz, double fs_hz,
                           double settle_s, double measure_s,
                           double amplitude) {
  if (!(f_hz > 0.0) || !(fs_hz > 2.0 * f_hz))
    throw std::invalid_argument("measure_response: need 0 < f < fs/2");
  if (measure_s * f_hz < 2.0)
    throw std::invalid_argument("measure_response: need at least two periods");

  const auto n_settle =
      static_cast<std::size_t>(std::llround(settle_s * fs_hz));
  const auto n_measure =
      static_cast<std::size_t>(std::llround(measure_s * fs_hz));

  // Normal equations for y ~ a sin(wt) + b cos(wt) + c.
  double sss = 0, ssc = 0, scc = 0, ss = 0, sc = 0;
  double sys = 0, syc = 0, sy = 0, syy = 0;
  for (std::size_t i = 0; i < n_settle + n_measure; ++i) {
    const double t = static_cast<double>(i) / fs_hz;
    const double x = amplitude * std::sin(kTwoPi * f_hz * t);
    const double y = filter(t, x);
    if (i < n_settle) continue;
    const double s = std::sin(kTwoPi * f_hz * t);
    const double c = std::cos(kTwoPi * f_hz * t);
    sss += s * s;
    ssc += s * c;
    scc += c * c;
    ss += s;
    sc += c;
    sy += y;
    sys += y * s;
    syc += y * c;
    syy += y * y;
  }
  const double n = static_cast<double>(n_measure);
  Matrix m(3, 3);
  m(0, 0) = sss; m(0, 1) = ssc; m(0, 2) = ss;
  m(1, 0) = ssc; m(1, 1) = scc; m(1, 2) = sc;
  m(2, 0) = ss;  m(2, 1) = sc;  m(2, 2) = n;
  const auto factor = CholeskyFactor::compute(m);
  if (!factor)
    throw std::invalid_argument("measure_response: degenerate fit window");
  const std::vector<double> rhs{sys, syc, sy};
  const std::vector<double> abc = factor->solve(rhs);
  const double a = abc[0], b = abc[1], c = abc[2];

  BodePoint point;
  point.frequency_hz = f_hz;
  point.amplitude_ratio = std::hypot(a, b) / amplitude;
  point.phase_rad = std::atan2(b, a);
  if (point.phase_rad <= -std::numbers::pi)
    point.phase_rad += kTwoPi;

  // rms of y - fit, from accumulated sums
  const double sse = syy - 2.0 * (a * sys + b * syc + c * sy) + a * a * sss +
                     b * b * scc + c * c * n + 2.0 * (a * b * ssc + a * c * ss + b * c * sc);
  const double rms = std::sqrt(std::max(sse, 0.0) / n);
  const double denom = std::max(std::hypot(a, b), 1e-300);
  point.fit_residual_ratio = rms / denom;
  point.sinusoidal = point.fit_residual_ratio <= 0.2;
  return point;
}

std::vector<MseResult> mse_sweep(const FilterFactory& factory,
                                 std::span<const double> frequencies,
                                 const NoiseSpec& noise, std::uint64_t seed,
                                 const MseSweepOptions& options) {
  if (options.repetitions < 1)
    throw std::invalid_argument("mse_sweep: repetitions must be >= 1");
  const std::size_t nf = frequencies.size();
  const std::size_t reps = static_cast<std::size_t>(options.repetitions);
  std::vector<double> mse(nf * reps, 0.0);

  parallel_for(nf * reps, [&](std::size_t task) {
    const std::size_t fi = task / reps;
    SignalSpec spec;
    spec.kind = SignalSpec::Kind::sine;
    spec.amplitude = options.amplitude;
    spec.frequency_hz = frequencies[fi];
    spec.fs_hz = 1000.0;
    spec.duration_s = options.duration_s;
    if (!options.strict_duration) {
      spec.duration_s = std::max(spec.duration_s, 2.0 / frequencies[fi]);
    }
    spec.noise = noise;
    SampleStream stream = generate(spec);
    {
      // Re-draw the noise from a per-task stream so repetitions are
      // independent while staying reproducible under any schedule.
      CounterRng rng(seed, task + 1);
      for (std::size_t i = 0; i < stream.size(); ++i) {
        double eps = 0.0;
        if (noise.kind == NoiseSpec::Kind::gaussian)
          eps = rng.normal(0.0, noise.param);
        else if (noise.kind == NoiseSpec::Kind::uniform)
          eps = rng.uniform(-noise.param, noise.param);
        stream.noisy[i] = stream.clean[i] + eps;
      }
    }
    StepFilter filter = factory();
    double acc = 0.0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const double xhat = filter(stream.t[i], stream.noisy[i]);
      const double e = xhat - stream.clean[i];
      acc += e * e;
    }
    mse[task] = acc / static_cast<double>(stream.size());
  });

  std::vector<MseResult> out(nf);
  for (std::size_t fi = 0; fi < nf; ++fi) {
    double mean = 0.0;
    for (std::size_t r = 0; r < reps; ++r) mean += mse[fi * reps + r];
    mean /= static_cast<double>(reps);
    double var = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const double d = mse[fi * reps + r] - mean;
      var += d * d;
    }
    var = reps > 1 ? var / static_cast<double>(reps - 1) : 0.0;
    out[fi] = {frequencies[fi], mean, std::sqrt(var)};
  }
  return out;
}

}  // namespace swgp
