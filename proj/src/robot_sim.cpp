#include "swgp/robot_sim.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "swgp/errors.hpp"
#include "swgp/rng.hpp"

namespace swgp {

void ManipulatorParams::validate() const {
  if (!(m1 > 0 && m2 > 0 && l1 > 0 && l2 > 0 && lc1 > 0 && lc2 > 0 && i1 > 0 &&
        i2 > 0))
    throw std::invalid_argument("manipulator: masses, lengths, inertias must be positive");
}

std::array<std::array<double, 2>, 2> manipulator_inertia(
    const Vec2& q, const ManipulatorParams& p) {
  const double c2 = std::cos(q[1]);
  const double m11 = p.i1 + p.i2 + p.m1 * p.lc1 * p.lc1 +
                     p.m2 * (p.l1 * p.l1 + p.lc2 * p.lc2 + 2.0 * p.l1 * p.lc2 * c2);
  const double m12 = p.i2 + p.m2 * (p.lc2 * p.lc2 + p.l1 * p.lc2 * c2);
  const double m22 = p.i2 + p.m2 * p.lc2 * p.lc2;
  return {{{m11, m12}, {m12, m22}}};
}

Vec2 manipulator_gravity(const Vec2& q, const ManipulatorParams& p) {
  const double c1 = std::cos(q[0]);
  const double c12 = std::cos(q[0] + q[1]);
  return {(p.m1 * p.lc1 + p.m2 * p.l1) * p.gravity * c1 +
              p.m2 * p.lc2 * p.gravity * c12,
          p.m2 * p.lc2 * p.gravity * c12};
}

Vec2 manipulator_accel(const Vec2& q, const Vec2& qd, const Vec2& u,
                       const ManipulatorParams& p) {
  const auto m = manipulator_inertia(q, p);
  const double h = p.m2 * p.l1 * p.lc2 * std::sin(q[1]);
  const Vec2 cor{-h * (2.0 * qd[0] * qd[1] + qd[1] * qd[1]), h * qd[0] * qd[0]};
  const Vec2 grav = manipulator_gravity(q, p);
  const Vec2 rhs{u[0] - cor[0] - grav[0], u[1] - cor[1] - grav[1]};
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (!(det > 0.0))
    throw NumericalError("manipulator inertia matrix not positive definite");
  return {(m[1][1] * rhs[0] - m[0][1] * rhs[1]) / det,
          (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det};
}

namespace {

struct RobotState {
  Vec2 q{0.0, 0.0};
  Vec2 qd{0.0, 0.0};
};

Vec2 q_ref(double t) {
  const double s = std::sin(0.1 * t * t);
  return {s, 0.5 * s};
}

Vec2 qd_ref(double t) {
  const double c = 0.2 * t * std::cos(0.1 * t * t);
  return {c, 0.5 * c};
}

RobotState rk4_step(const RobotState& s, const Vec2& u,
                    const ManipulatorParams& p, double dt) {
  auto deriv = [&](const RobotState& x) {
    return std::pair<Vec2, Vec2>{x.qd, manipulator_accel(x.q, x.qd, u, p)};
  };
  auto advance = [](const RobotState& x, const std::pair<Vec2, Vec2>& d,
                    double h) {
    RobotState out;
    for (int i = 0; i < 2; ++i) {
      out.q[i] = x.q[i] + h * d.first[i];
      out.qd[i] = x.qd[i] + h * d.second[i];
    }
    return out;
  };
  const auto k1 = deriv(s);
  const auto k2 = deriv(advance(s, k1, dt / 2.0));
  const auto k3 = deriv(advance(s, k2, dt / 2.0));
  const auto k4 = deriv(advance(s, k3, dt));
  RobotState out;
  for (int i = 0; i < 2; ++i) {
    out.q[i] = s.q[i] + dt / 6.0 *
                            (k1.first[i] + 2.0 * k2.first[i] +
                             2.0 * k3.first[i] + k4.first[i]);
    out.qd[i] = s.qd[i] + dt / 6.0 *
                              (k1.second[i] + 2.0 * k2.second[i] +
                               2.0 * k3.second[i] + k4.second[i]);
  }
  return out;
}

}  // namespace

TrajectoryLog run_closed_loop(const ClosedLoopConfig& config,
                              MeasurementMode mode, std::uint64_t seed) {
  config.robot.validate();
  if (config.substeps < 1 || !(config.fs_hz > 0.0) || !(config.duration_s > 0.0))
    throw std::invalid_argument("closed loop: bad configuration");

  const double period = 1.0 / config.fs_hz;
  const auto ticks =
      static_cast<std::size_t>(std::llround(config.duration_s * config.fs_hz));

  std::optional<SwGpFilter> filter;
  if (mode == MeasurementMode::swgp) {
    SwGpFilterConfig fc;
    fc.window_capacity = config.window;
    fc.sample_period = period;
    fc.dims = 2;
    fc.initial_hp = config.initial_hp;
    fc.rprop = config.rprop;
    fc.update_decimation = config.update_decimation;
    fc.adapt = true;
    filter.emplace(fc);
  }

  CounterRng rng(seed, 7);
  RobotState state;
  TrajectoryLog log;
  Vec2 prev_vel_src{0.0, 0.0};
  bool have_prev = false;

  for (std::size_t k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * period;

    // Noise draws happen in every mode so raw/filtered runs of the same seed
    // see the identical measurement realization.
    const Vec2 eps{rng.normal(0.0, config.sigma_meas),
                   rng.normal(0.0, config.sigma_meas)};
    Vec2 meas = state.q;
    if (mode != MeasurementMode::noiseless) {
      meas[0] += eps[0];
      meas[1] += eps[1];
    }

    Vec2 feedback = meas;
    if (mode == MeasurementMode::swgp) {
      filter->push(t, meas);
      const auto est = filter->estimate(t);
      feedback = {est[0], est[1]};
    }

    const Vec2 vel_src = config.velocity_from_filtered ? feedback : meas;
    Vec2 qd_est{0.0, 0.0};
    if (have_prev) {
      qd_est = {(vel_src[0] - prev_vel_src[0]) * config.fs_hz,
                (vel_src[1] - prev_vel_src[1]) * config.fs_hz};
    }
    prev_vel_src = vel_src;
    have_prev = true;

    const Vec2 qr = q_ref(t);
    const Vec2 qdr = qd_ref(t);
    const Vec2 u{-config.kp * (feedback[0] - qr[0]) - config.kd * (qd_est[0] - qdr[0]),
                 -config.kp * (feedback[1] - qr[1]) - config.kd * (qd_est[1] - qdr[1])};

    log.t.push_back(t);
    log.q1.push_back(state.q[0]);
    log.q2.push_back(state.q[1]);
    log.qd1.push_back(state.qd[0]);
    log.qd2.push_back(state.qd[1]);
    log.q1_meas.push_back(meas[0]);
    log.q2_meas.push_back(meas[1]);
    log.q1_filt.push_back(feedback[0]);
    log.q2_filt.push_back(feedback[1]);
    log.u1.push_back(u[0]);
    log.u2.push_back(u[1]);

    const double dt = period / static_cast<double>(config.substeps);
    for (int s = 0; s < config.substeps; ++s) {
      state = rk4_step(state, u, config.robot, dt);
    }
    if (std::abs(state.q[0]) > 1e3 || std::abs(state.q[1]) > 1e3) {
      throw NumericalError("closed loop diverged at t=" + std::to_string(t));
    }
  }
  return log;
}

double state_mse(const TrajectoryLog& a, const TrajectoryLog& b) {
  if (a.size() != b.size() || a.size() == 0)
    throw std::invalid_argument("state_mse: mismatched logs");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d1 = a.q1[i] - b.q1[i];
    const double d2 = a.q2[i] - b.q2[i];
    const double d3 = a.qd1[i] - b.qd1[i];
    const double d4 = a.qd2[i] - b.qd2[i];
    acc += d1 * d1 + d2 * d2 + d3 * d3 + d4 * d4;
  }
  return acc / static_cast<double>(a.size());
}

std::vector<double> state_mse_over_time(const TrajectoryLog& a,
                                        const TrajectoryLog& b,
                                        double bucket_s) {
  if (a.size() != b.size() || a.size() == 0)
    throw std::invalid_argument("state_mse_over_time: mismatched logs");
  if (!(bucket_s > 0.0)) throw std::invalid_argument("bucket_s must be positive");
  std::vector<double> out;
  std::size_t start = 0;
  while (start < a.size()) {
    const double t0 = a.t[start];
    std::size_t end = start;
    double acc = 0.0;
    while (end < a.size() && a.t[end] < t0 + bucket_s) {
      const double d1 = a.q1[end] - b.q1[end];
      const double d2 = a.q2[end] - b.q2[end];
      const double d3 = a.qd1[end] - b.qd1[end];
      const double d4 = a.qd2[end] - b.qd2[end];
      acc += d1 * d1 + d2 * d2 + d3 * d3 + d4 * d4;
      ++end;
    }
    out.push_back(acc / static_cast<double>(end - start));
    start = end;
  }
  return out;
}

LatencyStats benchmark_latency(std::size_t window, std::size_t samples) {
  if (window == 0 || samples == 0)
    throw std::invalid_argument("benchmark_latency: bad arguments");
  using clock = std::chrono::steady_clock;

  SwGpFilterConfig fc;
  fc.window_capacity = window;
  fc.sample_period = 1e-3;
  fc.dims = 1;
  fc.adapt = true;
  fc.update_decimation = 1;
  SwGpFilter filter(fc);

  CounterRng rng(42);
  std::vector<double> update_s(samples), predict_s(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) * 1e-3;
    const double y = std::sin(2.0 * 3.141592653589793 * 5.0 * t) +
                     rng.normal(0.0, 0.1);
    const auto t0 = clock::now();
    filter.push(t, y);
    const auto t1 = clock::now();
    volatile double sink = filter.estimate1(t);
    (void)sink;
    const auto t2 = clock::now();
    update_s[k] = std::chrono::duration<double>(t1 - t0).count();
    predict_s[k] = std::chrono::duration<double>(t2 - t1).count();
  }

  auto mean_of = [](const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += v[i];
    return acc / static_cast<double>(hi - lo);
  };
  auto std_of = [&](const std::vector<double>& v, double mean) {
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(v.size()));
  };

  LatencyStats stats;
  stats.update_mean_s = mean_of(update_s, 0, samples);
  stats.update_std_s = std_of(update_s, stats.update_mean_s);
  stats.predict_mean_s = mean_of(predict_s, 0, samples);
  stats.predict_std_s = std_of(predict_s, stats.predict_mean_s);
  stats.early_update_mean_s = mean_of(update_s, 0, samples / 2);
  stats.late_update_mean_s = mean_of(update_s, samples / 2, samples);
  return stats;
}

}  // namespace swgp
