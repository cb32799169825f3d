#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swgp/gp.hpp"
#include "swgp/kernel.hpp"
#include "swgp/matrix.hpp"

namespace swgp {

// Sign-based step-size adaptation: grow the per-component step by eta_plus
// while the gradient sign holds, shrink by eta_minus on a sign flip, keep it
// on a zero product. Steps are clamped to [delta_min, delta_max].
struct RpropConfig {
  double eta_plus = 1.2;
  double eta_minus = 0.5;
  double delta0 = 0.01;
  double delta_min = 1e-6;
  double delta_max = 0.5;

  void validate() const;
};

class RpropState {
 public:
  RpropState() = default;
  RpropState(std::size_t n, const RpropConfig& cfg);

  // Updates step sizes from the sign product grad*prev_grad, then stores
  // grad as the previous gradient.
  void step(std::span<const double> grad);

  std::span<const double> delta() const { return delta_; }
  std::span<const double> prev_grad() const { return prev_grad_; }

 private:
  RpropConfig cfg_;
  std::vector<double> delta_;
  std::vector<double> prev_grad_;
};

// Fixed-capacity ring of (timestamp, value) pairs, oldest evicted first.
class SlidingWindow {
 public:
  explicit SlidingWindow(std::size_t capacity);

  void push(double t, double y);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return size_; }
  bool full() const { return size_ == capacity_; }
  std::uint64_t total_seen() const { return total_; }

  // Index 0 is the oldest retained sample.
  double time(std::size_t i) const { return t_[(head_ + i) % capacity_]; }
  double value(std::size_t i) const { return y_[(head_ + i) % capacity_]; }
  double last_time() const { return time(size_ - 1); }

  // Chronological copies for dense computation.
  void copy_times(std::vector<double>& out) const;
  void copy_values(std::vector<double>& out) const;

 private:
  std::size_t capacity_;
  std::vector<double> t_, y_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
  std::uint64_t total_ = 0;
};

struct SwGpFilterConfig {
  std::size_t window_capacity = 50;
  double sample_period = 1e-3;
  std::size_t dims = 1;
  Hyperparameters initial_hp{1.0, {0.1}, 0.31622776601683794};
  RpropConfig rprop;
  // Hyperparameter/posterior refresh happens on every k-th sample.
  std::size_t update_decimation = 1;
  bool adapt = true;
  // Adaptation acts on log-hyperparameters, clamped to this range so the
  // raw values can never underflow to zero or overflow.
  double log_hp_min = -27.631021115928547;  // log 1e-12
  double log_hp_max = 27.631021115928547;   // log 1e12

  void validate() const;
};

// Streaming adaptive filter: one GP per output dimension over a shared
// sliding window of timestamps, refreshed every update_decimation-th sample.
// On a refresh with adaptation enabled, hyperparameters move by one signed
// RPROP step using the gradient computed on the *previous* window, then the
// posterior is refit and the new window's gradient is stored for the next
// step.
//
// With adaptation disabled on a regularly spaced stream, the kernel matrix
// depends only on sample offsets, so its factorization is computed once per
// window size and reused; only the weight vector is recomputed per refresh.
//
// Concurrency: push must be externally serialized; estimate and
// fir_coefficients are pure reads and may run concurrently with each other
// but not with push.
class SwGpFilter {
 public:
  explicit SwGpFilter(SwGpFilterConfig config);

  void push(double t, std::span<const double> y);
  void push(double t, double y);  // dims == 1

  // Posterior mean per dimension at time t (t at or after the last refresh).
  std::vector<double> estimate(double t) const;
  double estimate1(double t) const;  // dims == 1

  // FIR view: per-dimension coefficient vectors c with estimate(t) = c^T y
  // over the window values. Requires a full window.
  std::vector<std::vector<double>> fir_coefficients(double t) const;

  std::size_t dims() const { return config_.dims; }
  std::size_t capacity() const { return config_.window_capacity; }
  std::uint64_t total_seen() const { return time_window_.total_seen(); }
  std::size_t window_size() const { return time_window_.size(); }
  double last_time() const;
  double last_refresh_time() const { return snapshot_last_time_; }
  bool regular_grid() const { return regular_; }

  const SlidingWindow& window(std::size_t dim) const { return dims_[dim].window; }
  Hyperparameters hyperparameters(std::size_t dim) const;
  std::span<const double> log_hyperparameters(std::size_t dim) const {
    return dims_[dim].log_hp;
  }
  const RpropState& rprop(std::size_t dim) const { return dims_[dim].rprop; }
  // Non-null only when the last refresh went through a full fit (adaptive or
  // irregular-grid path).
  const GpPosterior* posterior(std::size_t dim) const;

 private:
  struct DimState {
    SlidingWindow window;
    std::vector<double> log_hp;
    RpropState rprop;
    std::optional<GpPosterior> full;  // full-fit snapshot, absolute times
    std::vector<double> alpha;        // fast-path snapshot weights

    explicit DimState(std::size_t capacity) : window(capacity) {}
  };

  struct StationaryCache {
    std::size_t n = 0;
    InputSet offsets;  // (i - (n-1)) * tau, newest at 0
    std::optional<CholeskyFactor> factor;
  };

  void refresh();
  void refresh_dim_full(DimState& d);
  void refresh_dim_fast(DimState& d);
  void ensure_cache(std::size_t n);

  SwGpFilterConfig config_;
  SlidingWindow time_window_;  // timestamps only, shared schedule
  std::vector<DimState> dims_;
  StationaryCache cache_;
  bool regular_ = true;
  bool snapshot_fast_ = false;
  double snapshot_t_ref_ = 0.0;     // offset origin of the fast snapshot
  double snapshot_last_time_ = 0.0; // newest timestamp in the snapshot
  bool has_snapshot_ = false;
};

}  // namespace swgp
