#pragma once

#include <span>
#include <vector>

#include "drpkit/coverage/engine.hpp"

namespace drpkit::coverage {

// Coverage computed the slow way: for each level, build the empirical
// credible region explicitly and count how often the truth falls inside.
// Uses exactly the same substreams as drp_test / hpd_test so the two paths
// can be compared draw for draw. Small instances only (N <= 100, n <= 1000).

/// DRP: the region at level c is the smallest closed ball around theta_r
/// holding at least a fraction c of the samples.
std::vector<double> region_membership_ecp_drp(const JointSampleSet& dataset,
                                              const PosteriorSampler& sampler,
                                              const DrpOptions& options,
                                              std::span<const double> levels);

/// HPD: the region at level c is {theta : density >= t_c}, with t_c the
/// smallest density among the highest-density samples holding fraction c.
std::vector<double> region_membership_ecp_hpd(const JointSampleSet& dataset,
                                              const PosteriorSampler& sampler,
                                              const HpdOptions& options,
                                              std::span<const double> levels);

}  // namespace drpkit::coverage
