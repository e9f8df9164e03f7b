#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace drpkit::numerics {

/// Kolmogorov-Smirnov distance sup_x |F_n(x) - x| between the empirical CDF of
/// `values` and the uniform CDF on [0, 1]. Throws DomainError on empty input.
double ks_uniform_statistic(std::span<const double> values);

/// KS distance against an arbitrary continuous CDF.
double ks_statistic(std::span<const double> values, const std::function<double(double)>& cdf);

/// Pointwise binomial half-widths z * sqrt(c (1 - c) / n_sims) per level.
struct BinomialBand {
  std::vector<double> half_widths;

  std::size_t level_count() const noexcept { return half_widths.size(); }
};

BinomialBand binomial_band(std::span<const double> credibility_levels, std::size_t n_sims,
                           double z);

/// Sample mean and unbiased covariance of the rows of a row-major n x d block.
struct SampleMoments {
  std::vector<double> mean;
  std::vector<double> covariance;  ///< d x d, row-major
};
SampleMoments sample_moments(std::span<const double> rows, std::size_t dim);

}  // namespace drpkit::numerics
