#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace epe {

using StateIndex = std::size_t;
using Vector = std::vector<double>;

/// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// Builds from nested rows; all rows must share one length.
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double linf_norm(std::span<const double> x);
double l1_norm(std::span<const double> x);
double linf_distance(std::span<const double> a, std::span<const double> b);

/// y = P x
Vector multiply(const DenseMatrix& p, std::span<const double> x);

/// Solution x of (I - alpha P) x = (1 - alpha) rhs, by dense LU.
Vector solve_discounted(const DenseMatrix& p, double alpha, std::span<const double> rhs);

/// M = (1 - alpha) (I - alpha P)^{-1}. Row s of M is the discounted occupancy
/// distribution of a chain started at s.
DenseMatrix discounted_occupancy(const DenseMatrix& p, double alpha);

}  // namespace epe
