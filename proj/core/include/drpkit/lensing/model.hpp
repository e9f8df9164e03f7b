#pragma once

#include <cstddef>
#include <cstdint>

#include "drpkit/numerics/matrix.hpp"
#include "drpkit/numerics/rng.hpp"

namespace drpkit::lensing {

using numerics::DenseMatrix;
using numerics::SeededRng;
using numerics::Vector;

/// Linear observation operator from a source pixel grid to an image grid.
///
/// Each image pixel at position y (grid spanning [-extent, extent]^2) is
/// traced back to the source plane through a smooth off-center radial warp
///   beta = y - strength * (y - c) / sqrt(|y - c|^2 + core^2)
/// and reads the source by bilinear interpolation, so its row is a convex
/// combination of at most four source pixels (rows whose footprint leaves
/// the source grid keep only the in-grid weights). The seed jitters the
/// warp center and strength. Construction checks full column rank and a
/// condition number below 1e4 and throws ConfigError otherwise.
struct OperatorOptions {
  std::size_t source_side = 8;
  std::size_t image_side = 16;
  double strength = 0.3;
  double core_radius = 0.3;
  double field_extent = 1.2;
  bool identity = false;  ///< requires source_side == image_side; A = I
};

DenseMatrix build_operator(const OperatorOptions& options, std::uint64_t seed);

/// Convenience overload on flattened sizes (both perfect squares).
DenseMatrix build_operator(std::size_t dim_theta, std::size_t dim_x, std::uint64_t seed,
                           bool identity = false);

struct GaussianPrior {
  Vector mean;
  DenseMatrix cov;
};

/// Structured Gaussian prior over a square pixel grid: the mean is a smooth
/// radial bump and the covariance a unit-amplitude squared-exponential kernel
/// with length `kernel_scale` (in pixels) plus 1e-4 I jitter. The seed
/// offsets the bump center by under half a pixel.
GaussianPrior build_prior(std::size_t dim_theta, double kernel_scale, std::uint64_t seed);

struct LensingConfig {
  std::size_t source_side = 8;  ///< large scale: 16
  std::size_t image_side = 16;  ///< large scale: 32
  double sigma_n = 1.0;
  double kernel_scale = 3.0;
  std::uint64_t model_seed = 0;
  bool identity_operator = false;

  void validate() const;
};

/// x ~ N(A theta, sigma_n^2 I), theta ~ N(mu0, Sigma0). Immutable after
/// construction; caches the spectral decomposition of Sigma0 and A^T A.
/// sigma_n = 0 is accepted for simulation only; scores and the conjugate
/// posterior need sigma_n > 0 and throw ConfigError otherwise.
class LensingModel {
 public:
  LensingModel(DenseMatrix forward, double sigma_n, Vector prior_mean, DenseMatrix prior_cov);

  static LensingModel build(const LensingConfig& config);

  std::size_t dim_theta() const noexcept { return prior_mean_.size(); }
  std::size_t dim_x() const noexcept { return forward_.rows(); }
  const DenseMatrix& forward() const noexcept { return forward_; }
  double sigma_n() const noexcept { return sigma_n_; }
  const Vector& prior_mean() const noexcept { return prior_mean_; }
  const DenseMatrix& prior_cov() const noexcept { return prior_cov_; }

  /// Eigenvalues (ascending) and eigenvectors (columns) of Sigma0.
  const Vector& prior_eigenvalues() const noexcept { return prior_eigenvalues_; }
  const DenseMatrix& prior_eigenvectors() const noexcept { return prior_eigenvectors_; }
  const DenseMatrix& prior_cholesky() const noexcept { return prior_cholesky_; }
  /// A^T A.
  const DenseMatrix& gram() const noexcept { return gram_; }

 private:
  DenseMatrix forward_;
  double sigma_n_;
  Vector prior_mean_;
  DenseMatrix prior_cov_;
  Vector prior_eigenvalues_;
  DenseMatrix prior_eigenvectors_;
  DenseMatrix prior_cholesky_;
  DenseMatrix gram_;
};

struct LensingDraw {
  Vector theta;
  Vector x;
};

/// theta ~ N(mu0, Sigma0); x = A theta + eps, eps ~ N(0, sigma_n^2 I).
LensingDraw simulate(const LensingModel& model, SeededRng& rng);

struct ConjugatePosterior {
  Vector mean;
  DenseMatrix cov;
};

/// cov = (Sigma0^-1 + A^T A / sigma_n^2)^-1, mean = cov (Sigma0^-1 mu0 + A^T x / sigma_n^2).
ConjugatePosterior conjugate_posterior(const LensingModel& model, std::span<const double> x);

}  // namespace drpkit::lensing
