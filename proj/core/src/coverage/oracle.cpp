#include "drpkit/coverage/oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "drpkit/error.hpp"

namespace drpkit::coverage {

namespace {

constexpr std::size_t kMaxSims = 100;
constexpr std::size_t kMaxPost = 1000;

void check_small(const JointSampleSet& dataset, std::size_t n_post) {
  if (dataset.n_sims() > kMaxSims || n_post > kMaxPost || n_post == 0) {
    throw DomainError("region-membership oracle supports N <= 100 and 1 <= n <= 1000");
  }
}

// Smallest k with k / n >= c, using the same double arithmetic as the rank path.
std::size_t samples_needed(double c, std::size_t n) {
  std::size_t k = 0;
  while (k < n && static_cast<double>(k) / static_cast<double>(n) < c) ++k;
  return k;
}

}  // namespace

std::vector<double> region_membership_ecp_drp(const JointSampleSet& dataset,
                                              const PosteriorSampler& sampler,
                                              const DrpOptions& options,
                                              std::span<const double> levels) {
  check_small(dataset, options.n_post);
  validate(options.metric);
  const std::size_t dim = dataset.dim_theta();
  const NormalizationMap normalization = fit_normalization(dataset, options.bounds);
  std::vector<std::size_t> covered(levels.size(), 0);
  std::size_t trials = 0;

  for (const Simulation& sim : dataset.sims()) {
    SeededRng rng = posterior_stream(options.seed, sim.sim_id);
    DenseMatrix draws = sampler.sample(sim.x, options.n_post, rng);
    normalization.apply_rows(draws);
    const Vector truth = normalization.apply(sim.theta_true);
    for (std::size_t r = 0; r < options.repeat_count; ++r) {
      SeededRng ref_rng = reference_stream(options.seed, sim.sim_id, r);
      const Vector theta_r = sample_reference(options.policy, sim.x, dim, normalization, ref_rng);
      std::vector<double> radii(draws.rows());
      for (std::size_t j = 0; j < draws.rows(); ++j) {
        radii[j] = distance(options.metric, draws.row(j), theta_r);
      }
      std::sort(radii.begin(), radii.end());
      const double truth_distance = distance(options.metric, truth, theta_r);
      for (std::size_t k = 0; k < levels.size(); ++k) {
        const std::size_t needed = samples_needed(levels[k], radii.size());
        // an empty region covers nothing
        if (needed > 0 && truth_distance <= radii[needed - 1]) ++covered[k];
      }
      ++trials;
    }
  }

  std::vector<double> ecp(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    ecp[k] = static_cast<double>(covered[k]) / static_cast<double>(trials);
  }
  return ecp;
}

std::vector<double> region_membership_ecp_hpd(const JointSampleSet& dataset,
                                              const PosteriorSampler& sampler,
                                              const HpdOptions& options,
                                              std::span<const double> levels) {
  check_small(dataset, options.n_post);
  if (!sampler.has_density()) {
    throw CapabilityError("hpd oracle: the posterior sampler does not provide densities");
  }
  std::vector<std::size_t> covered(levels.size(), 0);

  for (const Simulation& sim : dataset.sims()) {
    SeededRng rng = posterior_stream(options.seed, sim.sim_id);
    const DenseMatrix draws = sampler.sample(sim.x, options.n_post, rng);
    std::vector<double> log_densities(draws.rows());
    for (std::size_t j = 0; j < draws.rows(); ++j) {
      log_densities[j] = sampler.log_density(draws.row(j), sim.x);
    }
    std::sort(log_densities.begin(), log_densities.end(), std::greater<>());
    const double truth = sampler.log_density(sim.theta_true, sim.x);
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const std::size_t needed = samples_needed(levels[k], log_densities.size());
      if (needed > 0 && truth >= log_densities[needed - 1]) ++covered[k];
    }
  }

  std::vector<double> ecp(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    ecp[k] = static_cast<double>(covered[k]) / static_cast<double>(dataset.n_sims());
  }
  return ecp;
}

}  // namespace drpkit::coverage
