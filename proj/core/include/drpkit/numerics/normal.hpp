#pragma once

namespace drpkit::numerics {

/// Standard normal CDF, 0.5 * erfc(-z / sqrt(2)). Accurate to a few ulp
/// (glibc erfc), well beyond 1e-12 absolute.
double norm_cdf(double z) noexcept;

/// Upper tail Q(z) = 1 - norm_cdf(z), evaluated without cancellation.
double norm_sf(double z) noexcept;

/// Standard normal log-density.
double norm_logpdf(double z) noexcept;

/// Inverse survival function: the z with norm_sf(z) == p.
/// Safeguarded Newton iteration on norm_sf inside a shrinking bracket.
/// Throws DomainError unless 0 < p < 1.
double norm_isf(double p);

}  // namespace drpkit::numerics
