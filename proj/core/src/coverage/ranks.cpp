#include "drpkit/coverage/ranks.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "drpkit/error.hpp"

namespace drpkit::coverage {

namespace {

RankStatistic make_rank(std::size_t count, std::size_t n) {
  RankStatistic r;
  r.count = count;
  r.n_post = n;
  r.f = static_cast<double>(count) / static_cast<double>(n);
  return r;
}

}  // namespace

RankStatistic drp_rank(const DenseMatrix& post_samples, std::span<const double> theta_true,
                       std::span<const double> theta_r, const DistanceMetric& metric) {
  const std::size_t n = post_samples.rows();
  if (n == 0) throw DomainError("drp_rank: no posterior samples");
  const std::size_t dim = theta_true.size();
  if (post_samples.cols() != dim || theta_r.size() != dim) {
    throw DimensionError("drp_rank: samples have " + std::to_string(post_samples.cols()) +
                         " columns, truth " + std::to_string(dim) + ", reference " +
                         std::to_string(theta_r.size()));
  }
  const double truth_distance = distance(metric, theta_true, theta_r);
  if (!std::isfinite(truth_distance)) throw DomainError("drp_rank: non-finite truth distance");
  std::size_t closer = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = distance(metric, post_samples.row(j), theta_r);
    if (!std::isfinite(d)) {
      throw DomainError("drp_rank: non-finite distance for sample " + std::to_string(j));
    }
    if (d < truth_distance) ++closer;
  }
  RankStatistic r = make_rank(closer, n);
  r.theta_r_used.assign(theta_r.begin(), theta_r.end());
  return r;
}

RankStatistic hpd_rank(std::span<const double> sample_densities, double truth_density) {
  if (sample_densities.empty()) throw DomainError("hpd_rank: no posterior samples");
  auto check = [](double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("hpd_rank: densities must be finite and nonnegative");
    }
  };
  check(truth_density);
  std::size_t above = 0;
  for (double p : sample_densities) {
    check(p);
    if (p > truth_density) ++above;
  }
  return make_rank(above, sample_densities.size());
}

RankStatistic hpd_rank_log(std::span<const double> sample_log_densities,
                           double truth_log_density) {
  if (sample_log_densities.empty()) throw DomainError("hpd_rank: no posterior samples");
  auto check = [](double v) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw DomainError("hpd_rank: log densities must be < +inf and not NaN");
    }
  };
  check(truth_log_density);
  std::size_t above = 0;
  for (double lp : sample_log_densities) {
    check(lp);
    if (lp > truth_log_density) ++above;
  }
  return make_rank(above, sample_log_densities.size());
}

}  // namespace drpkit::coverage
