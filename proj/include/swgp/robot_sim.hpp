#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "swgp/filter.hpp"
#include "swgp/kernel.hpp"

namespace swgp {

// Two-link planar manipulator, point values exposed so experiments can vary
// them. Defaults: unit masses and lengths, centers of mass at the link
// midpoints, thin-rod inertias about the COM.
struct ManipulatorParams {
  double m1 = 1.0, m2 = 1.0;
  double l1 = 1.0, l2 = 1.0;
  double lc1 = 0.5, lc2 = 0.5;
  double i1 = 1.0 / 12.0, i2 = 1.0 / 12.0;
  double gravity = 9.81;

  void validate() const;
};

using Vec2 = std::array<double, 2>;

// Forward dynamics qdd = M(q)^{-1} (u - C(q,qd) qd - g(q)).
Vec2 manipulator_accel(const Vec2& q, const Vec2& qd, const Vec2& u,
                       const ManipulatorParams& params);

// M(q), exposed for symmetry/definiteness checks.
std::array<std::array<double, 2>, 2> manipulator_inertia(
    const Vec2& q, const ManipulatorParams& params);

// Gravity torque vector g(q).
Vec2 manipulator_gravity(const Vec2& q, const ManipulatorParams& params);

struct ClosedLoopConfig {
  ManipulatorParams robot;
  double kp = 100.0;
  double kd = 10.0;
  double fs_hz = 1000.0;
  double sigma_meas = 0.1;
  std::size_t window = 50;
  std::size_t update_decimation = 3;
  double duration_s = 20.0;
  int substeps = 10;  // RK4 steps per control period
  Hyperparameters initial_hp{1.0, {0.1}, 0.31622776601683794};
  RpropConfig rprop;
  // When true (default) the finite-difference velocities are taken on the
  // filtered positions, otherwise on the raw measurements.
  bool velocity_from_filtered = true;
};

enum class MeasurementMode { noiseless, raw, swgp };

struct TrajectoryLog {
  std::vector<double> t;
  std::vector<double> q1, q2, qd1, qd2;
  std::vector<double> q1_meas, q2_meas;
  std::vector<double> q1_filt, q2_filt;  // position feedback used by the PD law
  std::vector<double> u1, u2;
  std::size_t size() const { return t.size(); }
};

// PD tracking of q_ref(t) = [sin(0.1 t^2), 0.5 sin(0.1 t^2)] at fs_hz with
// zero-order hold; measurements are joint angles plus Gaussian noise
// (sigma_meas), velocities by finite differences. Deterministic per seed.
TrajectoryLog run_closed_loop(const ClosedLoopConfig& config,
                              MeasurementMode mode, std::uint64_t seed);

// Mean squared full-state distance between two runs on the same schedule.
double state_mse(const TrajectoryLog& a, const TrajectoryLog& b);

// Same, bucketed over time (for trend checks against the noiseless twin).
std::vector<double> state_mse_over_time(const TrajectoryLog& a,
                                        const TrajectoryLog& b,
                                        double bucket_s);

struct LatencyStats {
  double update_mean_s = 0.0;
  double update_std_s = 0.0;
  double predict_mean_s = 0.0;
  double predict_std_s = 0.0;
  // push-call means over the first and second halves of the stream
  double early_update_mean_s = 0.0;
  double late_update_mean_s = 0.0;
};

// Wall-clock statistics over `samples` push/estimate cycles of an adaptive
// scalar filter at the given window size (update_decimation 1).
LatencyStats benchmark_latency(std::size_t window, std::size_t samples);

}  // namespace swgp
