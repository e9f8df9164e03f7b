#include "drpkit/coverage/normalization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "drpkit/error.hpp"

namespace drpkit::coverage {

NormalizationMap::NormalizationMap(std::span<const Bounds> bounds) {
  offsets_.reserve(bounds.size());
  scales_.reserve(bounds.size());
  for (std::size_t d = 0; d < bounds.size(); ++d) {
    const auto [lo, hi] = bounds[d];
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw NormalizationError("normalization: dimension " + std::to_string(d) +
                                   " needs finite bounds with lo < hi",
                               d);
    }
    offsets_.push_back(lo);
    scales_.push_back(hi - lo);
  }
}

NormalizationMap NormalizationMap::identity(std::size_t dim) {
  const std::vector<Bounds> unit(dim, Bounds{0.0, 1.0});
  return NormalizationMap(unit);
}

Vector NormalizationMap::apply(std::span<const double> theta) const {
  if (theta.size() != dim()) throw DimensionError("normalization: dimension mismatch");
  Vector out(theta.size());
  for (std::size_t d = 0; d < theta.size(); ++d) out[d] = apply(d, theta[d]);
  return out;
}

void NormalizationMap::apply_rows(DenseMatrix& rows) const {
  if (rows.cols() != dim()) throw DimensionError("normalization: dimension mismatch");
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    auto row = rows.row(r);
    for (std::size_t d = 0; d < row.size(); ++d) row[d] = apply(d, row[d]);
  }
}

NormalizationMap fit_normalization(const JointSampleSet& dataset,
                                   const std::optional<std::vector<Bounds>>& explicit_bounds) {
  const std::size_t dim = dataset.dim_theta();
  if (explicit_bounds) {
    if (explicit_bounds->size() != dim) {
      throw DimensionError("normalization: " + std::to_string(explicit_bounds->size()) +
                           " bounds given for " + std::to_string(dim) + " dimensions");
    }
    return NormalizationMap(*explicit_bounds);
  }
  std::vector<Bounds> bounds(dim, Bounds{std::numeric_limits<double>::infinity(),
                                         -std::numeric_limits<double>::infinity()});
  for (const auto& sim : dataset.sims()) {
    for (std::size_t d = 0; d < dim; ++d) {
      bounds[d].lo = std::min(bounds[d].lo, sim.theta_true[d]);
      bounds[d].hi = std::max(bounds[d].hi, sim.theta_true[d]);
    }
  }
  for (std::size_t d = 0; d < dim; ++d) {
    if (!(bounds[d].lo < bounds[d].hi)) {
      throw NormalizationError("normalization: dimension " + std::to_string(d) +
                                   " is degenerate (all truths equal); supply explicit bounds",
                               d);
    }
  }
  return NormalizationMap(bounds);
}

}  // namespace drpkit::coverage
