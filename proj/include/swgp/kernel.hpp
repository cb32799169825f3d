#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "swgp/matrix.hpp"

namespace swgp {

// Kernel hyperparameters: signal standard deviation, one lengthscale per
// input dimension, and the assumed observation-noise standard deviation.
// All strictly positive. Flattened order is [sigma_f, l_0..l_{rho-1},
// sigma_on], matching gradient component indices everywhere.
struct Hyperparameters {
  double sigma_f = 1.0;
  std::vector<double> lengthscales{1.0};
  double sigma_on = 1.0;

  std::size_t input_dim() const { return lengthscales.size(); }
  std::size_t param_count() const { return lengthscales.size() + 2; }

  // Throws std::invalid_argument on non-positive entries or empty
  // lengthscales.
  void validate() const;

  std::vector<double> to_vector() const;
  static Hyperparameters from_vector(std::span<const double> v);
};

// N input points of fixed dimension, point-major flat storage. For
// time-indexed filtering (dim == 1) the storage is the raw timestamp array.
class InputSet {
 public:
  InputSet() = default;
  explicit InputSet(std::size_t dim) : dim_(dim) {}

  static InputSet from_times(std::span<const double> times);

  void push_back(std::span<const double> point);
  void push_time(double t);

  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return data_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  // Valid only for dim == 1.
  const double* times() const { return data_.data(); }
  double time(std::size_t i) const { return data_[i]; }

 private:
  std::size_t dim_ = 1;
  std::vector<double> data_;
};

struct KernelMatrix {
  Matrix entries;
  double jitter_applied = 0.0;
};

// Stationary kernel interface: pointwise evaluation plus whole-matrix
// operations so implementations can vectorize internally. a_partial is the
// elementwise derivative of A = K + sigma_on^2 I with respect to one raw
// hyperparameter (index as in Hyperparameters::to_vector).
class Kernel {
 public:
  virtual ~Kernel() = default;

  virtual double evaluate(std::span<const double> z, std::span<const double> zp,
                          const Hyperparameters& hp) const = 0;
  virtual void matrix(const InputSet& z, const Hyperparameters& hp,
                      Matrix& out) const = 0;
  virtual void vector(std::span<const double> z, const InputSet& zs,
                      const Hyperparameters& hp, double* out) const = 0;
  // k_cached, when non-null, is the kernel matrix for (z, hp) and lets
  // implementations skip re-evaluation.
  virtual void a_partial(const InputSet& z, const Hyperparameters& hp,
                         std::size_t which, const Matrix* k_cached,
                         Matrix& out) const = 0;
};

class SquaredExponential final : public Kernel {
 public:
  static const SquaredExponential& instance();

  double evaluate(std::span<const double> z, std::span<const double> zp,
                  const Hyperparameters& hp) const override;
  void matrix(const InputSet& z, const Hyperparameters& hp,
              Matrix& out) const override;
  void vector(std::span<const double> z, const InputSet& zs,
              const Hyperparameters& hp, double* out) const override;
  void a_partial(const InputSet& z, const Hyperparameters& hp,
                 std::size_t which, const Matrix* k_cached,
                 Matrix& out) const override;
};

/// sigma_f^2 * exp(-sum_i (z_i - z'_i)^2 / (2 l_i^2))
double se_kernel(std::span<const double> z, std::span<const double> zp,
                 const Hyperparameters& hp);

KernelMatrix kernel_matrix(const InputSet& z, const Hyperparameters& hp);
std::vector<double> kernel_vector(std::span<const double> z, const InputSet& zs,
                                  const Hyperparameters& hp);
Matrix kernel_matrix_partial(const InputSet& z, const Hyperparameters& hp,
                             std::size_t which);

}  // namespace swgp
