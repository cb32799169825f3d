#include "swgp/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "swgp/simd.hpp"

namespace swgp {

void Hyperparameters::validate() const {
  if (lengthscales.empty())
    throw std::invalid_argument("hyperparameters: no lengthscales");
  if (!(sigma_f > 0.0) || !(sigma_on > 0.0))
    throw std::invalid_argument("hyperparameters: sigma_f and sigma_on must be positive");
  for (double l : lengthscales)
    if (!(l > 0.0))
      throw std::invalid_argument("hyperparameters: lengthscales must be positive");
}

std::vector<double> Hyperparameters::to_vector() const {
  std::vector<double> v;
  v.reserve(param_count());
  v.push_back(sigma_f);
  v.insert(v.end(), lengthscales.begin(), lengthscales.end());
  v.push_back(sigma_on);
  return v;
}

Hyperparameters Hyperparameters::from_vector(std::span<const double> v) {
  if (v.size() < 3)
    throw std::invalid_argument("hyperparameter vector needs at least 3 entries");
  Hyperparameters hp;
  hp.sigma_f = v.front();
  hp.lengthscales.assign(v.begin() + 1, v.end() - 1);
  hp.sigma_on = v.back();
  return hp;
}

InputSet InputSet::from_times(std::span<const double> times) {
  InputSet s(1);
  s.data_.assign(times.begin(), times.end());
  return s;
}

void InputSet::push_back(std::span<const double> point) {
  if (point.size() != dim_)
    throw std::invalid_argument("input point dimension mismatch");
  data_.insert(data_.end(), point.begin(), point.end());
}

void InputSet::push_time(double t) {
  if (dim_ != 1) throw std::invalid_argument("push_time requires dim 1");
  data_.push_back(t);
}

const SquaredExponential& SquaredExponential::instance() {
  static const SquaredExponential k;
  return k;
}

double SquaredExponential::evaluate(std::span<const double> z,
                                    std::span<const double> zp,
                                    const Hyperparameters& hp) const {
  const std::size_t rho = hp.input_dim();
  if (z.size() != rho || zp.size() != rho)
    throw std::invalid_argument("se_kernel: input dimension mismatch");
  double arg = 0.0;
  for (std::size_t i = 0; i < rho; ++i) {
    const double d = z[i] - zp[i];
    arg += d * d / (2.0 * hp.lengthscales[i] * hp.lengthscales[i]);
  }
  return hp.sigma_f * hp.sigma_f * std::exp(-arg);
}

void SquaredExponential::matrix(const InputSet& z, const Hyperparameters& hp,
                                Matrix& out) const {
  const std::size_t n = z.size();
  if (z.dim() != hp.input_dim())
    throw std::invalid_argument("kernel_matrix: input dimension mismatch");
  out = Matrix(n, n);
  const double sf2 = hp.sigma_f * hp.sigma_f;
  if (z.dim() == 1) {
    const double l = hp.lengthscales[0];
    const double inv2l2 = 1.0 / (2.0 * l * l);
    const double* ts = z.times();
    // Upper triangle by rows (contiguous tails), mirrored exactly.
    for (std::size_t i = 0; i < n; ++i) {
      simd::se_row(out.row(i) + i, ts[i], ts + i, n - i, inv2l2, sf2);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        out(i, j) = evaluate(z.point(i), z.point(j), hp);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
}

void SquaredExponential::vector(std::span<const double> z, const InputSet& zs,
                                const Hyperparameters& hp, double* out) const {
  if (z.size() != hp.input_dim() || zs.dim() != hp.input_dim())
    throw std::invalid_argument("kernel_vector: input dimension mismatch");
  const std::size_t n = zs.size();
  if (zs.dim() == 1) {
    const double l = hp.lengthscales[0];
    simd::se_row(out, z[0], zs.times(), n, 1.0 / (2.0 * l * l),
                 hp.sigma_f * hp.sigma_f);
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = evaluate(z, zs.point(i), hp);
  }
}

void SquaredExponential::a_partial(const InputSet& z, const Hyperparameters& hp,
                                   std::size_t which, const Matrix* k_cached,
                                   Matrix& out) const {
  const std::size_t n = z.size();
  const std::size_t rho = hp.input_dim();
  if (which >= hp.param_count())
    throw std::invalid_argument("a_partial: hyperparameter index out of range");

  if (which == rho + 1) {  // sigma_on: dA/dσ_on = 2 σ_on I
    out = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 2.0 * hp.sigma_on;
    return;
  }

  Matrix local;
  const Matrix* k = k_cached;
  if (k == nullptr) {
    matrix(z, hp, local);
    k = &local;
  }
  out = Matrix(n, n);
  if (which == 0) {  // sigma_f: dK/dσ_f = 2 K / σ_f
    const double s = 2.0 / hp.sigma_f;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = s * k->data()[i];
    return;
  }
  // lengthscale l_d: dK/dl = K ⊙ dist_d^2 / l^3
  const std::size_t d = which - 1;
  const double l = hp.lengthscales[d];
  const double inv_l3 = 1.0 / (l * l * l);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double diff = z.point(i)[d] - z.point(j)[d];
      out(i, j) = (*k)(i, j) * diff * diff * inv_l3;
    }
  }
}

double se_kernel(std::span<const double> z, std::span<const double> zp,
                 const Hyperparameters& hp) {
  return SquaredExponential::instance().evaluate(z, zp, hp);
}

KernelMatrix kernel_matrix(const InputSet& z, const Hyperparameters& hp) {
  KernelMatrix km;
  SquaredExponential::instance().matrix(z, hp, km.entries);
  return km;
}

std::vector<double> kernel_vector(std::span<const double> z, const InputSet& zs,
                                  const Hyperparameters& hp) {
  std::vector<double> out(zs.size());
  SquaredExponential::instance().vector(z, zs, hp, out.data());
  return out;
}

Matrix kernel_matrix_partial(const InputSet& z, const Hyperparameters& hp,
                             std::size_t which) {
  Matrix out;
  SquaredExponential::instance().a_partial(z, hp, which, nullptr, out);
  return out;
}

}  // namespace swgp
