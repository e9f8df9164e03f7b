#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "drpkit/coverage/types.hpp"

namespace drpkit::coverage {

/// ecp(c) = #{i : f_i < c} / N for every level c, with a pointwise binomial
/// band of `band_z` standard errors. Ranks are stored sorted by sim_id.
/// Throws DomainError on empty ranks or a level outside [0, 1].
CoverageCurve ecp_curve(std::vector<RankStatistic> ranks, std::span<const double> levels,
                        std::size_t n_post, Method method, double band_z = 3.0);

/// Comparison of a curve against the diagonal ecp = c.
struct DiagonalSummary {
  std::size_t levels = 0;
  std::size_t levels_in_band = 0;  ///< |ecp - c| <= half_width
  double in_band_fraction = 0.0;
  double max_abs_deviation = 0.0;
  /// max |ecp - c| / half_width over levels with a nonzero half-width.
  double max_band_ratio = 0.0;
  double worst_level = 0.0;  ///< level attaining max_band_ratio
};

DiagonalSummary compare_to_diagonal(const CoverageCurve& curve);

/// Fraction of ranks with f in the closed interval [lo, hi].
double rank_mass(const std::vector<RankStatistic>& ranks, double lo, double hi);

}  // namespace drpkit::coverage
