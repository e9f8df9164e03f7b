#include "drpkit/coverage/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drpkit/error.hpp"

namespace drpkit::coverage {

CoverageCurve ecp_curve(std::vector<RankStatistic> ranks, std::span<const double> levels,
                        std::size_t n_post, Method method, double band_z) {
  if (ranks.empty()) throw DomainError("ecp_curve: no rank statistics");
  for (double c : levels) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw DomainError("ecp_curve: credibility level " + std::to_string(c) +
                        " outside [0, 1]");
    }
  }
  std::stable_sort(ranks.begin(), ranks.end(),
                   [](const RankStatistic& a, const RankStatistic& b) { return a.sim_id < b.sim_id; });

  std::vector<double> sorted_f;
  sorted_f.reserve(ranks.size());
  for (const auto& r : ranks) sorted_f.push_back(r.f);
  std::sort(sorted_f.begin(), sorted_f.end());

  CoverageCurve curve;
  curve.method = method;
  curve.credibility_levels.assign(levels.begin(), levels.end());
  curve.ecp.reserve(levels.size());
  const double total = static_cast<double>(sorted_f.size());
  for (double c : levels) {
    // number of f_i strictly below c
    const auto below = std::lower_bound(sorted_f.begin(), sorted_f.end(), c) - sorted_f.begin();
    curve.ecp.push_back(static_cast<double>(below) / total);
  }
  curve.n_sims = ranks.size();
  curve.n_post = n_post;
  curve.band = numerics::binomial_band(levels, curve.n_sims, band_z);
  curve.ranks = std::move(ranks);
  return curve;
}

DiagonalSummary compare_to_diagonal(const CoverageCurve& curve) {
  DiagonalSummary s;
  s.levels = curve.credibility_levels.size();
  for (std::size_t k = 0; k < s.levels; ++k) {
    const double c = curve.credibility_levels[k];
    const double dev = std::abs(curve.ecp[k] - c);
    const double hw = curve.band.half_widths[k];
    if (dev <= hw) ++s.levels_in_band;
    s.max_abs_deviation = std::max(s.max_abs_deviation, dev);
    if (hw > 0.0 && dev / hw > s.max_band_ratio) {
      s.max_band_ratio = dev / hw;
      s.worst_level = c;
    }
  }
  s.in_band_fraction =
      s.levels == 0 ? 0.0 : static_cast<double>(s.levels_in_band) / static_cast<double>(s.levels);
  return s;
}

double rank_mass(const std::vector<RankStatistic>& ranks, double lo, double hi) {
  if (ranks.empty()) return 0.0;
  const auto hits = std::count_if(ranks.begin(), ranks.end(),
                                  [&](const RankStatistic& r) { return r.f >= lo && r.f <= hi; });
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

}  // namespace drpkit::coverage
