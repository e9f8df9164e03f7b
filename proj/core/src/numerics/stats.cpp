#include "drpkit/numerics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drpkit/error.hpp"

namespace drpkit::numerics {

double ks_statistic(std::span<const double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw DomainError("ks_statistic: empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    // the empirical CDF jumps from i/n to (i+1)/n at sorted[i]
    worst = std::max(worst, std::abs(static_cast<double>(i + 1) / n - f));
    worst = std::max(worst, std::abs(f - static_cast<double>(i) / n));
  }
  return worst;
}

double ks_uniform_statistic(std::span<const double> values) {
  return ks_statistic(values, [](double x) { return std::clamp(x, 0.0, 1.0); });
}

BinomialBand binomial_band(std::span<const double> credibility_levels, std::size_t n_sims,
                           double z) {
  if (n_sims == 0) throw DomainError("binomial_band: n_sims must be at least 1");
  BinomialBand band;
  band.half_widths.reserve(credibility_levels.size());
  const double n = static_cast<double>(n_sims);
  for (double c : credibility_levels) {
    const double var = std::max(0.0, c * (1.0 - c));
    band.half_widths.push_back(z * std::sqrt(var / n));
  }
  return band;
}

SampleMoments sample_moments(std::span<const double> rows, std::size_t dim) {
  if (dim == 0 || rows.size() % dim != 0) {
    throw DimensionError("sample_moments: block size is not a multiple of the dimension");
  }
  const std::size_t n = rows.size() / dim;
  if (n < 2) throw DomainError("sample_moments: need at least two rows");
  SampleMoments m;
  m.mean.assign(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d < dim; ++d) m.mean[d] += rows[i * dim + d];
  for (auto& v : m.mean) v /= static_cast<double>(n);
  m.covariance.assign(dim * dim, 0.0);
  std::vector<double> centered(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) centered[d] = rows[i * dim + d] - m.mean[d];
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = a; b < dim; ++b) m.covariance[a * dim + b] += centered[a] * centered[b];
  }
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a; b < dim; ++b) {
      const double v = m.covariance[a * dim + b] / static_cast<double>(n - 1);
      m.covariance[a * dim + b] = v;
      m.covariance[b * dim + a] = v;
    }
  return m;
}

}  // namespace drpkit::numerics
