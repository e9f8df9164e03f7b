#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace drpkit::coverage {

struct Euclidean {};

/// sqrt(sum_d w_d (a_d - b_d)^2) with every w_d > 0.
struct WeightedEuclidean {
  std::vector<double> weights;
};

using DistanceMetric = std::variant<Euclidean, WeightedEuclidean>;

/// Throws DomainError on a non-positive or non-finite weight.
void validate(const DistanceMetric& metric);

std::string describe(const DistanceMetric& metric);

/// Throws DimensionError on length mismatch.
double distance(const DistanceMetric& metric, std::span<const double> a, std::span<const double> b);

}  // namespace drpkit::coverage
