#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "drpkit/coverage/types.hpp"

namespace drpkit::coverage {

struct Bounds {
  double lo = 0.0;
  double hi = 1.0;
};

/// Per-dimension affine map theta -> (theta - offset) / scale onto [0, 1].
class NormalizationMap {
 public:
  NormalizationMap() = default;
  /// Throws NormalizationError unless lo < hi (finite) in every dimension.
  explicit NormalizationMap(std::span<const Bounds> bounds);

  static NormalizationMap identity(std::size_t dim);

  std::size_t dim() const noexcept { return offsets_.size(); }
  const std::vector<double>& offsets() const noexcept { return offsets_; }
  const std::vector<double>& scales() const noexcept { return scales_; }

  double apply(std::size_t d, double value) const noexcept {
    return (value - offsets_[d]) / scales_[d];
  }
  Vector apply(std::span<const double> theta) const;
  /// Normalizes every row of an n x dim matrix in place.
  void apply_rows(DenseMatrix& rows) const;

 private:
  std::vector<double> offsets_;
  std::vector<double> scales_;
};

/// Explicit bounds map lo -> 0 and hi -> 1; without them the empirical
/// per-dimension min/max over all theta_true is used. A dimension whose
/// values are all equal throws NormalizationError naming it.
NormalizationMap fit_normalization(const JointSampleSet& dataset,
                                   const std::optional<std::vector<Bounds>>& explicit_bounds);

}  // namespace drpkit::coverage
