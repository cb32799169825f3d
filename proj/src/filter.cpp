#include "swgp/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swgp/errors.hpp"
#include "swgp/simd.hpp"

namespace swgp {

namespace {

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Grid jitter tolerated before the stationary fast path is abandoned.
inline double grid_tol(double t) { return 1e-9 + 1e-12 * std::abs(t); }

}  // namespace

void RpropConfig::validate() const {
  if (!(eta_plus > 1.0)) throw std::invalid_argument("rprop: eta_plus must be > 1");
  if (!(eta_minus > 0.0 && eta_minus < 1.0))
    throw std::invalid_argument("rprop: eta_minus must be in (0,1)");
  if (!(delta_min > 0.0 && delta_min <= delta_max))
    throw std::invalid_argument("rprop: need 0 < delta_min <= delta_max");
  if (!(delta0 >= delta_min && delta0 <= delta_max))
    throw std::invalid_argument("rprop: delta0 outside [delta_min, delta_max]");
}

RpropState::RpropState(std::size_t n, const RpropConfig& cfg)
    : cfg_(cfg), delta_(n, cfg.delta0), prev_grad_(n, 0.0) {}

void RpropState::step(std::span<const double> grad) {
  if (grad.size() != delta_.size())
    throw std::invalid_argument("rprop step: gradient dimension mismatch");
  for (std::size_t j = 0; j < delta_.size(); ++j) {
    const double p = grad[j] * prev_grad_[j];
    if (p > 0.0) {
      delta_[j] = std::min(cfg_.eta_plus * delta_[j], cfg_.delta_max);
    } else if (p < 0.0) {
      delta_[j] = std::max(cfg_.eta_minus * delta_[j], cfg_.delta_min);
    }
    prev_grad_[j] = grad[j];
  }
}

SlidingWindow::SlidingWindow(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("window capacity must be >= 1");
  t_.reserve(capacity);
  y_.reserve(capacity);
}

void SlidingWindow::push(double t, double y) {
  if (size_ < capacity_) {
    t_.push_back(t);
    y_.push_back(y);
    ++size_;
  } else {
    t_[head_] = t;
    y_[head_] = y;
    head_ = (head_ + 1) % capacity_;
  }
  ++total_;
}

void SlidingWindow::copy_times(std::vector<double>& out) const {
  out.resize(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = time(i);
}

void SlidingWindow::copy_values(std::vector<double>& out) const {
  out.resize(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = value(i);
}

void SwGpFilterConfig::validate() const {
  if (window_capacity == 0)
    throw std::invalid_argument("filter: window_capacity must be >= 1");
  if (!(sample_period > 0.0))
    throw std::invalid_argument("filter: sample_period must be positive");
  if (dims == 0) throw std::invalid_argument("filter: dims must be >= 1");
  if (update_decimation == 0)
    throw std::invalid_argument("filter: update_decimation must be >= 1");
  initial_hp.validate();
  if (initial_hp.input_dim() != 1)
    throw std::invalid_argument("filter: time-indexed filtering needs one lengthscale");
  rprop.validate();
  if (!(log_hp_min < log_hp_max))
    throw std::invalid_argument("filter: bad log-hyperparameter bounds");
}

SwGpFilter::SwGpFilter(SwGpFilterConfig config)
    : config_(std::move(config)), time_window_(std::max<std::size_t>(config_.window_capacity, 1)) {
  config_.validate();
  const std::vector<double> log_hp = [&] {
    std::vector<double> v = config_.initial_hp.to_vector();
    for (double& x : v) x = std::log(x);
    return v;
  }();
  dims_.reserve(config_.dims);
  for (std::size_t i = 0; i < config_.dims; ++i) {
    DimState d(config_.window_capacity);
    d.log_hp = log_hp;
    d.rprop = RpropState(log_hp.size(), config_.rprop);
    dims_.push_back(std::move(d));
  }
}

double SwGpFilter::last_time() const {
  if (time_window_.size() == 0)
    throw std::invalid_argument("filter: no samples yet");
  return time_window_.last_time();
}

Hyperparameters SwGpFilter::hyperparameters(std::size_t dim) const {
  std::vector<double> v(dims_[dim].log_hp.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::exp(dims_[dim].log_hp[j]);
  return Hyperparameters::from_vector(v);
}

const GpPosterior* SwGpFilter::posterior(std::size_t dim) const {
  return dims_[dim].full ? &*dims_[dim].full : nullptr;
}

void SwGpFilter::push(double t, std::span<const double> y) {
  if (y.size() != config_.dims)
    throw std::invalid_argument("push: sample dimension mismatch");
  if (time_window_.size() > 0) {
    const double prev = time_window_.last_time();
    if (!(t > prev))
      throw std::invalid_argument("push: timestamps must be strictly increasing");
    if (regular_ && std::abs(t - prev - config_.sample_period) > grid_tol(t)) {
      regular_ = false;
      cache_.factor.reset();
      cache_.n = 0;
    }
  }
  time_window_.push(t, 0.0);
  for (std::size_t i = 0; i < config_.dims; ++i) dims_[i].window.push(t, y[i]);
  if ((time_window_.total_seen() - 1) % config_.update_decimation == 0) refresh();
}

void SwGpFilter::push(double t, double y) { push(t, {&y, 1}); }

void SwGpFilter::ensure_cache(std::size_t n) {
  if (cache_.n == n && cache_.factor) return;
  const double tau = config_.sample_period;
  InputSet offsets(1);
  for (std::size_t i = 0; i < n; ++i)
    offsets.push_time(-static_cast<double>(n - 1 - i) * tau);

  Matrix k;
  SquaredExponential::instance().matrix(offsets, config_.initial_hp, k);
  const double sf2 = config_.initial_hp.sigma_f * config_.initial_hp.sigma_f;
  const double noise = config_.initial_hp.sigma_on * config_.initial_hp.sigma_on;
  double jitter = 0.0;
  for (;;) {
    Matrix a = k;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += noise + jitter;
    if (auto factor = CholeskyFactor::compute(a)) {
      cache_.n = n;
      cache_.offsets = std::move(offsets);
      cache_.factor = std::move(*factor);
      return;
    }
    jitter = (jitter == 0.0) ? 1e-10 * sf2 : jitter * 10.0;
    if (jitter > 1e-4 * sf2)
      throw NumericalError("filter: stationary kernel matrix not positive definite");
  }
}

void SwGpFilter::refresh_dim_full(DimState& d) {
  std::vector<double> times, values;
  d.window.copy_times(times);
  d.window.copy_values(values);

  if (config_.adapt) {
    const auto pg = d.rprop.prev_grad();
    const auto delta = d.rprop.delta();
    for (std::size_t j = 0; j < d.log_hp.size(); ++j) {
      d.log_hp[j] = std::clamp(d.log_hp[j] - sgn(pg[j]) * delta[j],
                               config_.log_hp_min, config_.log_hp_max);
    }
  }
  std::vector<double> theta(d.log_hp.size());
  for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = std::exp(d.log_hp[j]);
  Hyperparameters hp = Hyperparameters::from_vector(theta);

  d.full = GpPosterior::fit(InputSet::from_times(times), std::move(values), hp);

  if (config_.adapt) {
    std::vector<double> grad = d.full->nll_gradient();
    for (std::size_t j = 0; j < grad.size(); ++j) grad[j] *= theta[j];
    d.rprop.step(grad);
  }
}

void SwGpFilter::refresh_dim_fast(DimState& d) {
  d.window.copy_values(d.alpha);
  cache_.factor->solve_in_place(d.alpha);
  d.full.reset();
}

void SwGpFilter::refresh() {
  const bool fast = !config_.adapt && regular_;
  if (fast) {
    ensure_cache(time_window_.size());
    for (auto& d : dims_) refresh_dim_fast(d);
    snapshot_t_ref_ = time_window_.last_time();
  } else {
    for (auto& d : dims_) refresh_dim_full(d);
    snapshot_t_ref_ = 0.0;
  }
  snapshot_fast_ = fast;
  snapshot_last_time_ = time_window_.last_time();
  has_snapshot_ = true;
}

std::vector<double> SwGpFilter::estimate(double t) const {
  if (!has_snapshot_) throw std::invalid_argument("estimate: no samples pushed");
  if (t < snapshot_last_time_ - 1e-9)
    throw std::invalid_argument("estimate: t precedes the last refresh");
  std::vector<double> out(config_.dims);
  if (snapshot_fast_) {
    const double l = config_.initial_hp.lengthscales[0];
    const double inv2l2 = 1.0 / (2.0 * l * l);
    const double sf2 = config_.initial_hp.sigma_f * config_.initial_hp.sigma_f;
    const std::size_t n = cache_.n;
    std::vector<double> kv(n);
    simd::se_row(kv.data(), t - snapshot_t_ref_, cache_.offsets.times(), n,
                 inv2l2, sf2);
    for (std::size_t i = 0; i < config_.dims; ++i) {
      out[i] = simd::dot(kv.data(), dims_[i].alpha.data(), n);
    }
  } else {
    for (std::size_t i = 0; i < config_.dims; ++i) {
      out[i] = dims_[i].full->predict_mean(t);
    }
  }
  return out;
}

double SwGpFilter::estimate1(double t) const { return estimate(t)[0]; }

std::vector<std::vector<double>> SwGpFilter::fir_coefficients(double t) const {
  if (!has_snapshot_) throw std::invalid_argument("fir_coefficients: no samples");
  const std::size_t snapshot_n =
      snapshot_fast_ ? cache_.n : dims_[0].full->size();
  if (snapshot_n < config_.window_capacity)
    throw std::invalid_argument("fir_coefficients: window not full");
  std::vector<std::vector<double>> out(config_.dims);
  if (snapshot_fast_) {
    const double l = config_.initial_hp.lengthscales[0];
    const double inv2l2 = 1.0 / (2.0 * l * l);
    const double sf2 = config_.initial_hp.sigma_f * config_.initial_hp.sigma_f;
    std::vector<double> kv(cache_.n);
    simd::se_row(kv.data(), t - snapshot_t_ref_, cache_.offsets.times(),
                 cache_.n, inv2l2, sf2);
    for (std::size_t i = 0; i < config_.dims; ++i)
      out[i] = cache_.factor->solve(kv);
  } else {
    for (std::size_t i = 0; i < config_.dims; ++i) {
      const GpPosterior& post = *dims_[i].full;
      std::vector<double> kv(post.size());
      SquaredExponential::instance().vector({&t, 1}, post.inputs(), post.hp(),
                                            kv.data());
      out[i] = post.factor().solve(kv);
    }
  }
  return out;
}

}  // namespace swgp
