#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "drpkit/numerics/rng.hpp"

namespace drpkit::numerics {

using Vector = std::vector<double>;

/// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  using EigenRowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_eigen(const Eigen::Ref<const Eigen::MatrixXd>& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {entries_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<double> data() noexcept { return entries_; }
  std::span<const double> data() const noexcept { return entries_; }

  Eigen::Map<EigenRowMajor> eigen() noexcept {
    return {entries_.data(), static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_)};
  }
  Eigen::Map<const EigenRowMajor> eigen() const noexcept {
    return {entries_.data(), static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_)};
  }

  bool all_finite() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

DenseMatrix transpose(const DenseMatrix& m);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
Vector matvec(const DenseMatrix& a, std::span<const double> x);
/// a^T x without forming the transpose.
Vector matvec_transposed(const DenseMatrix& a, std::span<const double> x);

double frobenius_norm(const DenseMatrix& m);
/// ||a - b||_F / ||b||_F.
double relative_frobenius_error(const DenseMatrix& a, const DenseMatrix& b);
/// Largest |m(i,j) - m(j,i)| relative to the largest |m(i,j)|.
double asymmetry(const DenseMatrix& m);

/// Lower-triangular L with L L^T = m. Throws DecompositionError naming the
/// failing pivot when m is not (numerically) positive-definite, and
/// DimensionError for non-square or asymmetric input.
DenseMatrix cholesky(const DenseMatrix& m);

/// Solves L y = b for lower-triangular L.
Vector solve_lower(const DenseMatrix& lower, std::span<const double> b);
/// Solves L^T y = b for lower-triangular L.
Vector solve_lower_transposed(const DenseMatrix& lower, std::span<const double> b);
/// Solves m y = b given the Cholesky factor of m.
Vector cholesky_solve(const DenseMatrix& lower, std::span<const double> b);
/// Inverse of an SPD matrix from its Cholesky factor.
DenseMatrix cholesky_inverse(const DenseMatrix& lower);
/// log det m from its Cholesky factor.
double cholesky_log_det(const DenseMatrix& lower);

struct SymmetricEigen {
  Vector values;        ///< ascending
  DenseMatrix vectors;  ///< column k is the eigenvector for values[k]
};

/// Eigendecomposition of a symmetric matrix (Eigen's self-adjoint solver).
SymmetricEigen symmetric_eigen(const DenseMatrix& m);

/// Singular values, descending.
Vector singular_values(const DenseMatrix& m);

/// mean + L z, z i.i.d. standard normal drawn from rng.
Vector mvn_sample(std::span<const double> mean, const DenseMatrix& chol_cov, SeededRng& rng);

}  // namespace drpkit::numerics
