#include "drpkit/numerics/normal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drpkit/error.hpp"

namespace drpkit::numerics {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
}  // namespace

double norm_cdf(double z) noexcept { return 0.5 * std::erfc(-z * kInvSqrt2); }

double norm_sf(double z) noexcept { return 0.5 * std::erfc(z * kInvSqrt2); }

double norm_logpdf(double z) noexcept { return -0.5 * z * z - kLogSqrt2Pi; }

double norm_isf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("norm_isf: probability must lie in (0, 1), got " + std::to_string(p));
  }
  if (p == 0.5) return 0.0;

  // Work in the smaller tail, where norm_sf is computed without cancellation.
  const bool upper = p < 0.5;
  const double q = upper ? p : 1.0 - p;

  double lo = 0.0;
  double hi = 40.0;  // norm_sf(40) underflows far below any double q > 0
  double z = std::sqrt(-2.0 * std::log(q));  // tail starting point
  if (!(z > lo && z < hi)) z = 0.5 * (lo + hi);

  for (int iter = 0; iter < 200; ++iter) {
    const double f = norm_sf(z) - q;  // decreasing in z
    if (f == 0.0) break;
    if (f > 0.0) {
      lo = z;
    } else {
      hi = z;
    }
    const double density = std::exp(norm_logpdf(z));
    double next = density > 0.0 ? z + f / density : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) <= 1e-15 * std::max(1.0, std::abs(z))) {
      z = next;
      break;
    }
    z = next;
  }
  return upper ? z : -z;
}

}  // namespace drpkit::numerics
