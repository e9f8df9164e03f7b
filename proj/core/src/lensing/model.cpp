#include "drpkit/lensing/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drpkit/error.hpp"

namespace drpkit::lensing {

namespace {

constexpr double kJitter = 1e-4;
constexpr double kMaxCondition = 1e4;

std::size_t square_side(std::size_t n, const char* what) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (side * side != n) {
    throw ConfigError(std::string(what) + " must be a perfect square, got " + std::to_string(n));
  }
  return side;
}

// pixel-center coordinates of a side x side grid spanning [-extent, extent]
double pixel_center(std::size_t i, std::size_t side, double extent) {
  return ((static_cast<double>(i) + 0.5) / static_cast<double>(side) * 2.0 - 1.0) * extent;
}

}  // namespace

DenseMatrix build_operator(const OperatorOptions& options, std::uint64_t seed) {
  const std::size_t ns = options.source_side;
  const std::size_t no = options.image_side;
  if (ns < 2 || no < ns) throw ConfigError("operator: need image_side >= source_side >= 2");
  if (options.identity) {
    if (ns != no) throw ConfigError("operator: identity warp needs equal grid sizes");
    return DenseMatrix::identity(ns * ns);
  }

  SeededRng rng(seed, 0x4F50);
  const double cx = 0.12 + rng.uniform(-0.05, 0.05);
  const double cy = -0.07 + rng.uniform(-0.05, 0.05);
  const double strength = options.strength * rng.uniform(0.95, 1.05);
  const double core2 = options.core_radius * options.core_radius;

  DenseMatrix a(no * no, ns * ns);
  for (std::size_t iy = 0; iy < no; ++iy) {
    for (std::size_t ix = 0; ix < no; ++ix) {
      const double yx = pixel_center(ix, no, options.field_extent);
      const double yy = pixel_center(iy, no, options.field_extent);
      const double dx = yx - cx;
      const double dy = yy - cy;
      const double inv = strength / std::sqrt(dx * dx + dy * dy + core2);
      const double bx = yx - inv * dx;
      const double by = yy - inv * dy;
      // continuous source-pixel coordinates, 0 at the first pixel center
      const double ux = (bx + 1.0) * 0.5 * static_cast<double>(ns) - 0.5;
      const double uy = (by + 1.0) * 0.5 * static_cast<double>(ns) - 0.5;
      const double fx0 = std::floor(ux);
      const double fy0 = std::floor(uy);
      const double fx = ux - fx0;
      const double fy = uy - fy0;
      const std::size_t row = iy * no + ix;
      for (int oy = 0; oy <= 1; ++oy) {
        for (int ox = 0; ox <= 1; ++ox) {
          const double sx = fx0 + ox;
          const double sy = fy0 + oy;
          if (sx < 0 || sy < 0 || sx >= static_cast<double>(ns) || sy >= static_cast<double>(ns)) {
            continue;
          }
          const double w = (ox ? fx : 1.0 - fx) * (oy ? fy : 1.0 - fy);
          const auto col = static_cast<std::size_t>(sy) * ns + static_cast<std::size_t>(sx);
          a(row, col) += w;
        }
      }
    }
  }

  const Vector s = numerics::singular_values(a);
  const double smax = s.front();
  const double smin = s.back();
  if (!(smin > 0.0) || smax / smin > kMaxCondition) {
    throw ConfigError("operator: warp is rank-deficient or ill-conditioned (condition number " +
                      std::to_string(smin > 0.0 ? smax / smin : INFINITY) + "); re-seed");
  }
  return a;
}

DenseMatrix build_operator(std::size_t dim_theta, std::size_t dim_x, std::uint64_t seed,
                           bool identity) {
  if (dim_x < dim_theta) throw ConfigError("operator: dim_x must be >= dim_theta");
  OperatorOptions options;
  options.source_side = square_side(dim_theta, "dim_theta");
  options.image_side = square_side(dim_x, "dim_x");
  options.identity = identity;
  return build_operator(options, seed);
}

GaussianPrior build_prior(std::size_t dim_theta, double kernel_scale, std::uint64_t seed) {
  if (!(kernel_scale > 0.0)) throw ConfigError("prior: kernel_scale must be positive");
  const std::size_t side = square_side(dim_theta, "dim_theta");
  SeededRng rng(seed, 0x5052);
  const double half = 0.5 * static_cast<double>(side - 1);
  const double bump_x = half + rng.uniform(-0.5, 0.5);
  const double bump_y = half + rng.uniform(-0.5, 0.5);
  const double bump_width = 0.25 * static_cast<double>(side);

  GaussianPrior prior;
  prior.mean.resize(dim_theta);
  prior.cov = DenseMatrix(dim_theta, dim_theta);
  const double inv_two_l2 = 1.0 / (2.0 * kernel_scale * kernel_scale);
  for (std::size_t i = 0; i < dim_theta; ++i) {
    const double xi = static_cast<double>(i % side);
    const double yi = static_cast<double>(i / side);
    const double r2 = (xi - bump_x) * (xi - bump_x) + (yi - bump_y) * (yi - bump_y);
    prior.mean[i] = std::exp(-r2 / (2.0 * bump_width * bump_width));
    for (std::size_t j = 0; j <= i; ++j) {
      const double xj = static_cast<double>(j % side);
      const double yj = static_cast<double>(j / side);
      const double d2 = (xi - xj) * (xi - xj) + (yi - yj) * (yi - yj);
      const double k = std::exp(-d2 * inv_two_l2) + (i == j ? kJitter : 0.0);
      prior.cov(i, j) = k;
      prior.cov(j, i) = k;
    }
  }
  try {
    (void)numerics::cholesky(prior.cov);
  } catch (const DecompositionError& e) {
    throw ConfigError(std::string("prior: covariance is not SPD: ") + e.what());
  }
  return prior;
}

void LensingConfig::validate() const {
  if (source_side < 2) throw ConfigError("lensing: source_side must be >= 2");
  if (image_side < source_side) throw ConfigError("lensing: image_side must be >= source_side");
  if (!(sigma_n > 0.0) || !std::isfinite(sigma_n)) throw ConfigError("lensing: sigma_n must be > 0");
  if (!(kernel_scale > 0.0)) throw ConfigError("lensing: kernel_scale must be > 0");
}

LensingModel::LensingModel(DenseMatrix forward, double sigma_n, Vector prior_mean,
                           DenseMatrix prior_cov)
    : forward_(std::move(forward)),
      sigma_n_(sigma_n),
      prior_mean_(std::move(prior_mean)),
      prior_cov_(std::move(prior_cov)) {
  const std::size_t d = prior_mean_.size();
  if (forward_.cols() != d || prior_cov_.rows() != d || prior_cov_.cols() != d) {
    throw DimensionError("lensing model: operator, prior mean and covariance disagree");
  }
  if (!(sigma_n_ >= 0.0) || !std::isfinite(sigma_n_)) {
    throw ConfigError("lensing model: sigma_n must be finite and >= 0");
  }
  prior_cholesky_ = numerics::cholesky(prior_cov_);
  auto eig = numerics::symmetric_eigen(prior_cov_);
  prior_eigenvalues_ = std::move(eig.values);
  prior_eigenvectors_ = std::move(eig.vectors);
  gram_ = DenseMatrix(d, d);
  gram_.eigen().noalias() = forward_.eigen().transpose() * forward_.eigen();
  const Vector s = numerics::singular_values(forward_);
  if (!(s.back() > 0.0)) throw ConfigError("lensing model: operator lacks full column rank");
}

LensingModel LensingModel::build(const LensingConfig& config) {
  config.validate();
  OperatorOptions op;
  op.source_side = config.source_side;
  op.image_side = config.image_side;
  op.identity = config.identity_operator;
  DenseMatrix a = build_operator(op, config.model_seed);
  GaussianPrior prior =
      build_prior(config.source_side * config.source_side, config.kernel_scale, config.model_seed);
  return LensingModel(std::move(a), config.sigma_n, std::move(prior.mean), std::move(prior.cov));
}

LensingDraw simulate(const LensingModel& model, SeededRng& rng) {
  LensingDraw draw;
  draw.theta = numerics::mvn_sample(model.prior_mean(), model.prior_cholesky(), rng);
  draw.x = numerics::matvec(model.forward(), draw.theta);
  for (auto& v : draw.x) v += model.sigma_n() * rng.normal();
  return draw;
}

ConjugatePosterior conjugate_posterior(const LensingModel& model, std::span<const double> x) {
  if (x.size() != model.dim_x()) throw DimensionError("conjugate_posterior: x has wrong length");
  if (!(model.sigma_n() > 0.0)) throw ConfigError("conjugate_posterior: needs sigma_n > 0");
  const std::size_t d = model.dim_theta();
  const double noise_precision = 1.0 / (model.sigma_n() * model.sigma_n());
  const DenseMatrix prior_precision = numerics::cholesky_inverse(model.prior_cholesky());

  DenseMatrix precision(d, d);
  precision.eigen() = prior_precision.eigen() + noise_precision * model.gram().eigen();
  const DenseMatrix chol = numerics::cholesky(precision);

  Vector rhs = numerics::matvec(prior_precision, model.prior_mean());
  const Vector atx = numerics::matvec_transposed(model.forward(), x);
  for (std::size_t i = 0; i < d; ++i) rhs[i] += noise_precision * atx[i];

  ConjugatePosterior post;
  post.mean = numerics::cholesky_solve(chol, rhs);
  post.cov = numerics::cholesky_inverse(chol);
  return post;
}

}  // namespace drpkit::lensing
