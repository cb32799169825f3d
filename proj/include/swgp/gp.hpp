#pragma once

#include <span>
#include <vector>

#include "swgp/kernel.hpp"
#include "swgp/matrix.hpp"

namespace swgp {

// Exact GP posterior over a fixed data set. Immutable after fit; safe to
// share read-only across threads.
//
// A = K + sigma_on^2 I is kept factorized (lower Cholesky); alpha = A^{-1} y.
// When A is numerically indefinite, fit escalates a diagonal jitter from
// jitter_initial_rel*sigma_f^2 by factors of 10 up to jitter_max_rel*sigma_f^2
// before giving up with NumericalError.
struct GpFitOptions {
  double jitter_initial_rel = 1e-10;
  double jitter_max_rel = 1e-4;
};

class GpPosterior {
 public:
  static GpPosterior fit(InputSet inputs, std::vector<double> targets,
                         Hyperparameters hp,
                         const Kernel& kernel = SquaredExponential::instance(),
                         const GpFitOptions& options = GpFitOptions{});

  double predict_mean(std::span<const double> z) const;
  double predict_variance(std::span<const double> z) const;
  // dim-1 conveniences
  double predict_mean(double t) const { return predict_mean({&t, 1}); }
  double predict_variance(double t) const { return predict_variance({&t, 1}); }

  // 0.5 y^T alpha + 0.5 log det A + N/2 log 2pi
  double nll() const;
  // d(nll)/d theta_j = -0.5 tr((alpha alpha^T - A^{-1}) dA/dtheta_j),
  // raw-theta components ordered as Hyperparameters::to_vector.
  std::vector<double> nll_gradient() const;

  std::size_t size() const { return targets_.size(); }
  const InputSet& inputs() const { return inputs_; }
  std::span<const double> targets() const { return targets_; }
  std::span<const double> alpha() const { return alpha_; }
  const CholeskyFactor& factor() const { return factor_; }
  const Hyperparameters& hp() const { return hp_; }
  const Matrix& kernel_entries() const { return k_; }  // K, pre-jitter
  double jitter_applied() const { return jitter_; }

 private:
  GpPosterior(InputSet inputs, std::vector<double> targets, Hyperparameters hp,
              const Kernel& kernel, Matrix k, CholeskyFactor factor,
              std::vector<double> alpha, double jitter);

  InputSet inputs_;
  std::vector<double> targets_;
  Hyperparameters hp_;
  const Kernel* kernel_;
  Matrix k_;
  CholeskyFactor factor_;
  std::vector<double> alpha_;
  double jitter_ = 0.0;
};

}  // namespace swgp
