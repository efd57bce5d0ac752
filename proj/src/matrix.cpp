#include "epe/matrix.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "epe/errors.hpp"

namespace epe {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::PartialPivLU<Eigen::MatrixXd> discounted_lu(const DenseMatrix& p, double alpha) {
  require(p.rows() == p.cols(), "discounted solve needs a square matrix");
  const Eigen::Map<const RowMajor> pm(p.data().data(), p.rows(), p.cols());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(p.rows(), p.cols()) - alpha * pm;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(a);
}

}  // namespace

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  DenseMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, "ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

double linf_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double l1_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double linf_distance(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "linf_distance: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Vector multiply(const DenseMatrix& p, std::span<const double> x) {
  require(p.cols() == x.size(), "multiply: size mismatch");
  Vector y(p.rows(), 0.0);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const auto row = p.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

Vector solve_discounted(const DenseMatrix& p, double alpha, std::span<const double> rhs) {
  require(rhs.size() == p.rows(), "solve_discounted: size mismatch");
  const auto lu = discounted_lu(p, alpha);
  Eigen::VectorXd b(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) b[static_cast<Eigen::Index>(i)] = (1.0 - alpha) * rhs[i];
  const Eigen::VectorXd x = lu.solve(b);
  return Vector(x.data(), x.data() + x.size());
}

DenseMatrix discounted_occupancy(const DenseMatrix& p, double alpha) {
  const auto lu = discounted_lu(p, alpha);
  const auto n = static_cast<Eigen::Index>(p.rows());
  const Eigen::MatrixXd inv = lu.solve(Eigen::MatrixXd::Identity(n, n));
  DenseMatrix m(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = (1.0 - alpha) * inv(i, j);
  return m;
}

}  // namespace epe
