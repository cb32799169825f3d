#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swgp/kernel.hpp"
#include "swgp/matrix.hpp"

namespace swgp {

// Exact decomposition of the estimation error of a window GP evaluated at
// time t. With nested sub-window posteriors mu_i / sigma_i^2 (first i window
// points), per-step quantities
//
//   eta_n   = sigma_{n-1}^2(t_n) / (sigma_{n-1}^2(t_n) + sigma_on^2)
//   nu_n^N  = prod_{i=n}^{N-1} -sigma_on^2 / (sigma_i^2(t_{i+1}) + sigma_on^2)
//   Delta_n = x_{n+1} - x_n + mu_n(t_n) - mu_n(t_{n+1})
//
// the prediction error satisfies, exactly,
//
//   mu_N(t) - x(t) = delta_t + prior_attenuation + signal_variation
//                    + noise_passthrough
// with
//   delta_t           = (mu_N(t) - mu_N(t_N)) - (x(t) - x_N)
//   prior_attenuation = -|nu_0^N| x_1
//   signal_variation  = -sum_{n=1}^{N-1} |nu_n^N| Delta_n
//   noise_passthrough =  sum_{n=1}^{N}   |nu_n^N| eta_n eps_n.
//
// The exposed nus keep the signed product form (every factor negative, so
// the sign alternates with the factor count); the term formulas take the
// magnitudes, which is what the recursion actually yields.
struct ErrorDecomposition {
  double delta_t = 0.0;
  double prior_attenuation = 0.0;
  double signal_variation = 0.0;
  double noise_passthrough = 0.0;
  std::vector<double> etas;  // eta_1..eta_N
  std::vector<double> nus;   // nu_0^N..nu_N^N (signed)

  double total() const {
    return delta_t + prior_attenuation + signal_variation + noise_passthrough;
  }
};

struct UniformBound {
  double value = 0.0;
  std::vector<double> lip_mu;  // grid-slope estimates of L_{mu_n}, n=1..N
  double lip_x = 0.0;
  double eps_bar = 0.0;
  // How lip_mu was obtained; the bound is only as good as this estimate.
  std::string lip_mu_method;
};

// One bordered step of the kernel-matrix inverse: given the inverse of the
// previous A ((n-1)x(n-1)), the kernel vector k of the new point against the
// previous inputs and k_self = k(t,t), returns the n x n inverse of
// [[A_prev, k], [k^T, k_self + sigma_on^2]]. Throws NumericalError when the
// Schur denominator sigma^2 + sigma_on^2 falls below 1e-14.
Matrix block_inverse_update(const Matrix& a_inv_prev,
                            std::span<const double> k_vec, double k_self,
                            double sigma_on);

// eta_1..eta_N and signed nu_0^N..nu_N^N from the nested sub-window
// predictive variances. Targets do not enter.
std::pair<std::vector<double>, std::vector<double>> eta_nu_sequences(
    const InputSet& window_inputs, const Hyperparameters& hp);

// Exact error decomposition at time t. window_truth are the noise-free
// signal values, window_noise the realized noise (targets = truth + noise),
// x_at_t the true signal at t. For t at the last window timestamp,
// x_at_t = window_truth.back() and delta_t is exactly zero.
ErrorDecomposition error_decomposition(const InputSet& window_inputs,
                                       std::span<const double> window_truth,
                                       std::span<const double> window_noise,
                                       const Hyperparameters& hp, double t,
                                       double x_at_t);

// Deterministic worst-case bound under |noise| <= eps_bar and
// Lipschitz-continuous signal:
//   c = |nu_0^N| x1_bound + sum_n |nu_n^N| (eta_n eps_bar + (L_mu_n + L_x) tau)
// where x1_bound = |y_1| + eps_bar covers the unknown true first sample and
// L_mu_n is estimated as the maximum grid slope of mu_n (pitch tau/100 over
// the window span plus one tau of lookahead).
UniformBound uniform_error_bound(const InputSet& window_inputs,
                                 std::span<const double> window_targets,
                                 const Hyperparameters& hp, double eps_bar,
                                 double tau, double lip_x);

}  // namespace swgp
