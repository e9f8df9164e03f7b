#include "drpkit/coverage/types.hpp"

#include <cmath>
#include <string>

#include "drpkit/error.hpp"

namespace drpkit::coverage {

JointSampleSet::JointSampleSet(std::size_t dim_theta, std::vector<Simulation> sims)
    : dim_theta_(dim_theta), sims_(std::move(sims)) {
  if (dim_theta_ == 0) throw DimensionError("JointSampleSet: dim_theta must be positive");
  if (sims_.empty()) throw DomainError("JointSampleSet: at least one simulation is required");
  std::vector<bool> seen(sims_.size(), false);
  for (const auto& sim : sims_) {
    if (sim.sim_id >= sims_.size() || seen[sim.sim_id]) {
      throw DomainError("JointSampleSet: sim ids must be a permutation of [0, " +
                        std::to_string(sims_.size()) + "), offending id " +
                        std::to_string(sim.sim_id));
    }
    seen[sim.sim_id] = true;
    if (sim.theta_true.size() != dim_theta_) {
      throw DimensionError("JointSampleSet: sim " + std::to_string(sim.sim_id) + " has " +
                           std::to_string(sim.theta_true.size()) + " parameters, expected " +
                           std::to_string(dim_theta_));
    }
    for (double v : sim.theta_true) {
      if (!std::isfinite(v)) {
        throw DomainError("JointSampleSet: sim " + std::to_string(sim.sim_id) +
                          " has a non-finite parameter");
      }
    }
  }
}

double PosteriorSampler::log_density(std::span<const double>, const Observation&) const {
  throw CapabilityError("posterior sampler does not provide density evaluation");
}

std::string to_string(Method m) { return m == Method::Drp ? "DRP" : "HPD"; }

std::vector<double> default_credibility_grid(std::size_t intervals) {
  std::vector<double> grid(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    grid[k] = static_cast<double>(k) / static_cast<double>(intervals);
  }
  return grid;
}

}  // namespace drpkit::coverage
