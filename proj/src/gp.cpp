#include "swgp/gp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "swgp/errors.hpp"
#include "swgp/simd.hpp"

namespace swgp {

GpPosterior::GpPosterior(InputSet inputs, std::vector<double> targets,
                         Hyperparameters hp, const Kernel& kernel, Matrix k,
                         CholeskyFactor factor, std::vector<double> alpha,
                         double jitter)
    : inputs_(std::move(inputs)),
      targets_(std::move(targets)),
      hp_(std::move(hp)),
      kernel_(&kernel),
      k_(std::move(k)),
      factor_(std::move(factor)),
      alpha_(std::move(alpha)),
      jitter_(jitter) {}

GpPosterior GpPosterior::fit(InputSet inputs, std::vector<double> targets,
                             Hyperparameters hp, const Kernel& kernel,
                             const GpFitOptions& options) {
  hp.validate();
  const std::size_t n = inputs.size();
  if (n == 0) throw std::invalid_argument("gp fit: empty data set");
  if (targets.size() != n)
    throw std::invalid_argument("gp fit: |inputs| != |targets|");

  Matrix k;
  kernel.matrix(inputs, hp, k);

  const double sf2 = hp.sigma_f * hp.sigma_f;
  const double noise = hp.sigma_on * hp.sigma_on;
  double jitter = 0.0;
  for (;;) {
    Matrix a = k;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += noise + jitter;
    if (auto factor = CholeskyFactor::compute(a)) {
      auto alpha = factor->solve(targets);
      return GpPosterior(std::move(inputs), std::move(targets), std::move(hp),
                         kernel, std::move(k), std::move(*factor),
                         std::move(alpha), jitter);
    }
    jitter = (jitter == 0.0) ? options.jitter_initial_rel * sf2 : jitter * 10.0;
    if (jitter > options.jitter_max_rel * sf2) {
      throw NumericalError(
          "gp fit: kernel matrix not positive definite after jitter "
          "escalation (n=" +
          std::to_string(n) + ", jitter=" + std::to_string(jitter) + ")");
    }
  }
}

double GpPosterior::predict_mean(std::span<const double> z) const {
  std::vector<double> kv(size());
  kernel_->vector(z, inputs_, hp_, kv.data());
  return simd::dot(kv.data(), alpha_.data(), kv.size());
}

double GpPosterior::predict_variance(std::span<const double> z) const {
  std::vector<double> kv(size());
  kernel_->vector(z, inputs_, hp_, kv.data());
  const std::vector<double> v = factor_.solve(kv);
  const double prior = kernel_->evaluate(z, z, hp_);
  double var = prior - simd::dot(kv.data(), v.data(), kv.size());
  if (var < 0.0) {
    const double tol = 1e-12 * std::max(1.0, prior);
    if (var < -tol)
      throw NumericalError("predict_variance: negative variance " +
                           std::to_string(var));
    var = 0.0;
  }
  return var;
}

double GpPosterior::nll() const {
  const double quad =
      simd::dot(targets_.data(), alpha_.data(), targets_.size());
  return 0.5 * quad + 0.5 * factor_.log_det() +
         0.5 * static_cast<double>(size()) * std::log(2.0 * std::numbers::pi);
}

std::vector<double> GpPosterior::nll_gradient() const {
  const std::size_t n = size();
  const Matrix ainv = factor_.inverse();
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b(i, j) = alpha_[i] * alpha_[j] - ainv(i, j);

  const std::size_t p = hp_.param_count();
  std::vector<double> grad(p);
  Matrix partial;
  for (std::size_t j = 0; j < p; ++j) {
    kernel_->a_partial(inputs_, hp_, j, &k_, partial);
    grad[j] = -0.5 * simd::dot(b.data(), partial.data(), b.size());
  }
  return grad;
}

}  // namespace swgp
