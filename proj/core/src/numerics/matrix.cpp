#include "drpkit/numerics/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "drpkit/error.hpp"
#include "drpkit/numerics/rng.hpp"

namespace drpkit::numerics {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("DenseMatrix: ragged initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_eigen(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  DenseMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  out.eigen() = m;
  return out;
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  DenseMatrix out(a.rows(), b.cols());
  out.eigen().noalias() = a.eigen() * b.eigen();
  return out;
}

Vector matvec(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionError("matvec: dimension mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    double acc = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

Vector matvec_transposed(const DenseMatrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) throw DimensionError("matvec_transposed: dimension mismatch");
  Vector y(a.cols(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) y[c] += row[c] * x[r];
  }
  return y;
}

double frobenius_norm(const DenseMatrix& m) {
  double acc = 0.0;
  for (double v : m.data()) acc += v * v;
  return std::sqrt(acc);
}

double relative_frobenius_error(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("relative_frobenius_error: shape mismatch");
  }
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    diff += d * d;
    ref += b.data()[i] * b.data()[i];
  }
  return std::sqrt(diff) / std::sqrt(ref);
}

double asymmetry(const DenseMatrix& m) {
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      scale = std::max(scale, std::abs(m(i, j)));
      if (j > i) worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

DenseMatrix cholesky(const DenseMatrix& m) {
  if (!m.is_square()) throw DimensionError("cholesky: matrix is not square");
  if (asymmetry(m) > 1e-9) throw DimensionError("cholesky: matrix is not symmetric");
  const std::size_t n = m.rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag)) {
      throw DecompositionError(
          "cholesky: matrix is not positive-definite (pivot " + std::to_string(j) + ")", j);
    }
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double acc = m(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
      l(i, j) = acc / ljj;
    }
  }
  return l;
}

Vector solve_lower(const DenseMatrix& lower, std::span<const double> b) {
  const std::size_t n = lower.rows();
  if (b.size() != n) throw DimensionError("solve_lower: dimension mismatch");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = b[i];
    for (std::size_t k = 0; k < i; ++k) acc -= lower(i, k) * y[k];
    y[i] = acc / lower(i, i);
  }
  return y;
}

Vector solve_lower_transposed(const DenseMatrix& lower, std::span<const double> b) {
  const std::size_t n = lower.rows();
  if (b.size() != n) throw DimensionError("solve_lower_transposed: dimension mismatch");
  Vector y(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double acc = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) acc -= lower(k, ii) * y[k];
    y[ii] = acc / lower(ii, ii);
  }
  return y;
}

Vector cholesky_solve(const DenseMatrix& lower, std::span<const double> b) {
  const Vector y = solve_lower(lower, b);
  return solve_lower_transposed(lower, y);
}

DenseMatrix cholesky_inverse(const DenseMatrix& lower) {
  const std::size_t n = lower.rows();
  DenseMatrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    e[c] = 1.0;
    const Vector col = cholesky_solve(lower, e);
    e[c] = 0.0;
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  // symmetrize away round-off
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      const double avg = 0.5 * (inv(r, c) + inv(c, r));
      inv(r, c) = avg;
      inv(c, r) = avg;
    }
  return inv;
}

double cholesky_log_det(const DenseMatrix& lower) {
  double acc = 0.0;
  for (std::size_t i = 0; i < lower.rows(); ++i) acc += std::log(lower(i, i));
  return 2.0 * acc;
}

SymmetricEigen symmetric_eigen(const DenseMatrix& m) {
  if (!m.is_square()) throw DimensionError("symmetric_eigen: matrix is not square");
  const Eigen::MatrixXd dense = m.eigen();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw DecompositionError("symmetric_eigen: solver did not converge", 0);
  }
  SymmetricEigen out;
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + solver.eigenvalues().size());
  out.vectors = DenseMatrix::from_eigen(solver.eigenvectors());
  return out;
}

Vector singular_values(const DenseMatrix& m) {
  const Eigen::MatrixXd dense = m.eigen();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense);
  const auto& s = svd.singularValues();
  return Vector(s.data(), s.data() + s.size());
}

Vector mvn_sample(std::span<const double> mean, const DenseMatrix& chol_cov, SeededRng& rng) {
  const std::size_t n = mean.size();
  if (chol_cov.rows() != n || chol_cov.cols() != n) {
    throw DimensionError("mvn_sample: mean has " + std::to_string(n) +
                         " entries but the factor is " + std::to_string(chol_cov.rows()) + "x" +
                         std::to_string(chol_cov.cols()));
  }
  Vector z(n);
  for (auto& v : z) v = rng.normal();
  Vector out(mean.begin(), mean.end());
  for (std::size_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c <= r; ++c) acc += chol_cov(r, c) * z[c];
    out[r] += acc;
  }
  return out;
}

}  // namespace drpkit::numerics
