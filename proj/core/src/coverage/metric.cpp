#include "drpkit/coverage/metric.hpp"

#include <cmath>
#include <string>

#include "drpkit/error.hpp"

namespace drpkit::coverage {

void validate(const DistanceMetric& metric) {
  if (const auto* w = std::get_if<WeightedEuclidean>(&metric)) {
    for (std::size_t d = 0; d < w->weights.size(); ++d) {
      if (!(w->weights[d] > 0.0) || !std::isfinite(w->weights[d])) {
        throw DomainError("weighted metric: weight " + std::to_string(d) +
                          " must be positive and finite");
      }
    }
  }
}

std::string describe(const DistanceMetric& metric) {
  return std::holds_alternative<Euclidean>(metric) ? "euclidean" : "weighted";
}

double distance(const DistanceMetric& metric, std::span<const double> a,
                std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("distance: dimension mismatch");
  double acc = 0.0;
  if (const auto* w = std::get_if<WeightedEuclidean>(&metric)) {
    if (w->weights.size() != a.size()) {
      throw DimensionError("distance: metric has " + std::to_string(w->weights.size()) +
                           " weights for " + std::to_string(a.size()) + " dimensions");
    }
    for (std::size_t d = 0; d < a.size(); ++d) {
      const double diff = a[d] - b[d];
      acc += w->weights[d] * diff * diff;
    }
  } else {
    for (std::size_t d = 0; d < a.size(); ++d) {
      const double diff = a[d] - b[d];
      acc += diff * diff;
    }
  }
  return std::sqrt(acc);
}

}  // namespace drpkit::coverage
