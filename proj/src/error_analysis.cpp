#include "swgp/error_analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "swgp/errors.hpp"
#include "swgp/gp.hpp"
#include "swgp/simd.hpp"

namespace swgp {

Matrix block_inverse_update(const Matrix& a_inv_prev,
                            std::span<const double> k_vec, double k_self,
                            double sigma_on) {
  const std::size_t m = a_inv_prev.rows();
  if (a_inv_prev.cols() != m || k_vec.size() != m)
    throw std::invalid_argument("block_inverse_update: shape mismatch");

  const std::vector<double> a = matvec(a_inv_prev, k_vec);
  const double sigma2 = k_self - simd::dot(k_vec.data(), a.data(), m);
  const double denom = sigma2 + sigma_on * sigma_on;
  if (!(denom > 1e-14))
    throw NumericalError("block_inverse_update: near-singular denominator");
  const double inv_denom = 1.0 / denom;

  Matrix out(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out(i, j) = a_inv_prev(i, j) + a[i] * a[j] * inv_denom;
    }
    out(i, m) = -a[i] * inv_denom;
    out(m, i) = -a[i] * inv_denom;
  }
  out(m, m) = inv_denom;
  return out;
}

namespace {

// Nested sub-window posteriors (first i points, i = 1..N) fit from scratch.
// This module is an offline oracle; O(N^4) is fine here.
std::vector<GpPosterior> nested_chain(const InputSet& inputs,
                                      std::span<const double> targets,
                                      const Hyperparameters& hp) {
  const std::size_t n = inputs.size();
  std::vector<GpPosterior> chain;
  chain.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    InputSet sub(inputs.dim());
    for (std::size_t j = 0; j < i; ++j) sub.push_back(inputs.point(j));
    std::vector<double> y(targets.begin(), targets.begin() + i);
    chain.push_back(GpPosterior::fit(std::move(sub), std::move(y), hp));
  }
  return chain;
}

// etas/nus from the chain; chain[i-1] is the posterior on the first i points.
// sigma_0^2 is the prior variance k(t,t).
std::pair<std::vector<double>, std::vector<double>> eta_nu_from_chain(
    const std::vector<GpPosterior>& chain, const InputSet& inputs,
    const Hyperparameters& hp) {
  const std::size_t n = inputs.size();
  const double noise = hp.sigma_on * hp.sigma_on;
  std::vector<double> etas(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double var =
        (i == 0) ? se_kernel(inputs.point(0), inputs.point(0), hp)
                 : chain[i - 1].predict_variance(inputs.point(i));
    etas[i] = var / (var + noise);  // eta_{i+1}
  }
  std::vector<double> nus(n + 1);
  nus[n] = 1.0;
  for (std::size_t k = n; k-- > 0;) {
    nus[k] = (etas[k] - 1.0) * nus[k + 1];  // factor -sigma_on^2/(var+noise)
  }
  return {std::move(etas), std::move(nus)};
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> eta_nu_sequences(
    const InputSet& window_inputs, const Hyperparameters& hp) {
  if (window_inputs.empty())
    throw std::invalid_argument("eta_nu_sequences: empty window");
  hp.validate();
  // Variances are target-independent; fit on zeros.
  const std::vector<double> zeros(window_inputs.size(), 0.0);
  const auto chain = nested_chain(window_inputs, zeros, hp);
  return eta_nu_from_chain(chain, window_inputs, hp);
}

ErrorDecomposition error_decomposition(const InputSet& window_inputs,
                                       std::span<const double> window_truth,
                                       std::span<const double> window_noise,
                                       const Hyperparameters& hp, double t,
                                       double x_at_t) {
  const std::size_t n = window_inputs.size();
  if (n == 0) throw std::invalid_argument("error_decomposition: empty window");
  if (window_truth.size() != n || window_noise.size() != n)
    throw std::invalid_argument("error_decomposition: size mismatch");
  hp.validate();

  std::vector<double> targets(n);
  for (std::size_t i = 0; i < n; ++i)
    targets[i] = window_truth[i] + window_noise[i];

  const auto chain = nested_chain(window_inputs, targets, hp);
  auto [etas, nus] = eta_nu_from_chain(chain, window_inputs, hp);

  ErrorDecomposition dec;
  dec.prior_attenuation = -std::abs(nus[0]) * window_truth[0];

  double signal = 0.0;
  for (std::size_t m = 1; m < n; ++m) {  // Delta_m, m = 1..N-1 (1-based)
    const GpPosterior& post = chain[m - 1];
    const double delta_m = window_truth[m] - window_truth[m - 1] +
                           post.predict_mean(window_inputs.point(m - 1)) -
                           post.predict_mean(window_inputs.point(m));
    signal -= std::abs(nus[m]) * delta_m;
  }
  dec.signal_variation = signal;

  double noise_term = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    noise_term += std::abs(nus[m]) * etas[m - 1] * window_noise[m - 1];
  }
  dec.noise_passthrough = noise_term;

  const GpPosterior& last = chain[n - 1];
  dec.delta_t = (last.predict_mean({&t, 1}) -
                 last.predict_mean(window_inputs.point(n - 1))) -
                (x_at_t - window_truth[n - 1]);

  dec.etas = std::move(etas);
  dec.nus = std::move(nus);
  return dec;
}

UniformBound uniform_error_bound(const InputSet& window_inputs,
                                 std::span<const double> window_targets,
                                 const Hyperparameters& hp, double eps_bar,
                                 double tau, double lip_x) {
  const std::size_t n = window_inputs.size();
  if (n == 0) throw std::invalid_argument("uniform_error_bound: empty window");
  if (window_targets.size() != n)
    throw std::invalid_argument("uniform_error_bound: size mismatch");
  if (eps_bar < 0.0 || lip_x < 0.0 || !(tau > 0.0))
    throw std::invalid_argument("uniform_error_bound: bad parameters");
  if (window_inputs.dim() != 1)
    throw std::invalid_argument("uniform_error_bound: scalar-time windows only");
  hp.validate();

  const auto chain = nested_chain(window_inputs, window_targets, hp);
  auto [etas, nus] = eta_nu_from_chain(chain, window_inputs, hp);

  UniformBound bound;
  bound.eps_bar = eps_bar;
  bound.lip_x = lip_x;
  bound.lip_mu_method = "max grid slope, pitch tau/100, window span + tau";
  bound.lip_mu.resize(n);

  const double t0 = window_inputs.time(0);
  const double t1 = window_inputs.time(n - 1) + tau;
  const double pitch = tau / 100.0;
  const std::size_t steps = static_cast<std::size_t>(std::ceil((t1 - t0) / pitch));
  for (std::size_t m = 1; m <= n; ++m) {
    const GpPosterior& post = chain[m - 1];
    double lip = 0.0;
    double prev = post.predict_mean(t0);
    for (std::size_t k = 1; k <= steps; ++k) {
      const double tk = t0 + (t1 - t0) * static_cast<double>(k) /
                                 static_cast<double>(steps);
      const double cur = post.predict_mean(tk);
      lip = std::max(lip, std::abs(cur - prev) / ((t1 - t0) / steps));
      prev = cur;
    }
    bound.lip_mu[m - 1] = lip;
  }

  // |x_1| is not observable; |y_1| + eps_bar dominates it under the noise
  // bound assumption.
  const double x1_bound = std::abs(window_targets[0]) + eps_bar;
  double c = std::abs(nus[0]) * x1_bound;
  for (std::size_t m = 1; m <= n; ++m) {
    c += std::abs(nus[m]) *
         (etas[m - 1] * eps_bar + (bound.lip_mu[m - 1] + lip_x) * tau);
  }
  bound.value = c;
  return bound;
}

}  // namespace swgp
