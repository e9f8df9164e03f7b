#pragma once

#include <span>

#include "drpkit/coverage/metric.hpp"
#include "drpkit/coverage/types.hpp"

namespace drpkit::coverage {

/// Fraction of posterior samples (rows) strictly closer to theta_r than
/// theta_true. Equal distances do not count as closer. All inputs are
/// expected in normalized coordinates.
RankStatistic drp_rank(const DenseMatrix& post_samples, std::span<const double> theta_true,
                       std::span<const double> theta_r, const DistanceMetric& metric);

/// HPD rank from density values: the fraction of sample densities strictly
/// above the truth's density (the credibility of the HPD region whose
/// boundary passes through the truth). Throws DomainError on a negative or
/// non-finite density.
RankStatistic hpd_rank(std::span<const double> sample_densities, double truth_density);

/// Same as hpd_rank, on log densities (monotone, so comparisons agree).
/// -inf is allowed and stands for density zero.
RankStatistic hpd_rank_log(std::span<const double> sample_log_densities, double truth_log_density);

}  // namespace drpkit::coverage
