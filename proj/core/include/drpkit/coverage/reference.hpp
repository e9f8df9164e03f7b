#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "drpkit/coverage/normalization.hpp"
#include "drpkit/coverage/types.hpp"

namespace drpkit::coverage {

/// Reference point uniform on the normalized unit hypercube [0, 1]^D.
struct UnitHypercubeUniform {};

/// Reference point drawn from a prior in raw parameter space, then normalized.
struct PriorDraw {
  std::function<Vector(SeededRng&)> draw;
  std::string label = "prior";
};

/// theta_r = x[k] + Uniform(-u_max, u_max), then normalized. Requires D = 1.
struct DataShift {
  std::size_t coordinate = 0;
  double half_width = 1.0;
};

using ReferencePolicy = std::variant<UnitHypercubeUniform, PriorDraw, DataShift>;

std::string describe(const ReferencePolicy& policy);

/// Draws one reference point in normalized coordinates. Throws PolicyError
/// when the policy does not apply (DataShift with D != 1 or a short x).
Vector sample_reference(const ReferencePolicy& policy, const Observation& x, std::size_t dim,
                        const NormalizationMap& normalization, SeededRng& rng);

}  // namespace drpkit::coverage
