#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace swgp {

// Dense row-major square/rectangular matrix. Sized for window-scale problems
// (a few hundred rows); storage is a flat vector so the simd kernels can
// stream whole rows.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Lower-triangular Cholesky factor of a symmetric positive-definite matrix,
// A = L L^T. Entries above the diagonal are zero.
class CholeskyFactor {
 public:
  // Returns nullopt when A is numerically indefinite.
  static std::optional<CholeskyFactor> compute(const Matrix& a);

  std::size_t size() const { return l_.rows(); }
  const Matrix& lower() const { return l_; }

  // Solves A x = b in place.
  void solve_in_place(std::span<double> b) const;
  std::vector<double> solve(std::span<const double> b) const;

  // log det A = 2 * sum_i log L_ii
  double log_det() const;

  // Explicit A^{-1} (column-wise solves).
  Matrix inverse() const;

 private:
  explicit CholeskyFactor(Matrix l) : l_(std::move(l)) {}
  Matrix l_;
};

// out = M v
std::vector<double> matvec(const Matrix& m, std::span<const double> v);

}  // namespace swgp
