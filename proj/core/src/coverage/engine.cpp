#include "drpkit/coverage/engine.hpp"

#include <string>

#include "drpkit/coverage/curve.hpp"
#include "drpkit/coverage/ranks.hpp"
#include "drpkit/error.hpp"
#include "drpkit/numerics/parallel.hpp"

namespace drpkit::coverage {

SeededRng posterior_stream(std::uint64_t seed, std::uint64_t sim_id) {
  return SeededRng(seed, numerics::derive_stream(sim_id, kPosteriorPurpose));
}

SeededRng reference_stream(std::uint64_t seed, std::uint64_t sim_id, std::uint64_t repeat) {
  return SeededRng(seed, numerics::derive_stream(sim_id, kReferencePurpose + repeat));
}

namespace {

template <class Fn>
void with_sim_context(std::uint64_t sim_id, Fn&& fn) {
  try {
    fn();
  } catch (const SimulationError&) {
    throw;
  } catch (const std::exception& e) {
    throw SimulationError(e.what(), sim_id);
  }
}

void check_samples(const DenseMatrix& samples, std::size_t dim) {
  if (samples.rows() == 0) throw DomainError("posterior sampler returned no samples");
  if (samples.cols() != dim) {
    throw DimensionError("posterior samples have " + std::to_string(samples.cols()) +
                         " columns, expected " + std::to_string(dim));
  }
  if (!samples.all_finite()) throw DomainError("posterior samples contain non-finite values");
}

std::size_t common_n_post(const std::vector<RankStatistic>& ranks) {
  if (ranks.empty()) return 0;
  const std::size_t n = ranks.front().n_post;
  for (const auto& r : ranks)
    if (r.n_post != n) return 0;
  return n;
}

}  // namespace

std::vector<RankStatistic> drp_ranks(const JointSampleSet& dataset, const SampleProvider& samples,
                                     const DrpOptions& options) {
  if (dataset.n_sims() == 0) throw DomainError("drp_test: empty dataset");
  if (options.repeat_count == 0) throw DomainError("drp_test: repeat_count must be >= 1");
  validate(options.metric);
  const std::size_t dim = dataset.dim_theta();
  const NormalizationMap normalization = fit_normalization(dataset, options.bounds);

  std::vector<std::vector<RankStatistic>> per_sim(dataset.n_sims());
  numerics::parallel_for(dataset.n_sims(), options.threads, [&](std::size_t i) {
    const Simulation& sim = dataset[i];
    with_sim_context(sim.sim_id, [&] {
      SeededRng rng = posterior_stream(options.seed, sim.sim_id);
      DenseMatrix draws = samples(i, rng);
      check_samples(draws, dim);
      normalization.apply_rows(draws);
      const Vector truth = normalization.apply(sim.theta_true);
      auto& out = per_sim[i];
      out.reserve(options.repeat_count);
      for (std::size_t r = 0; r < options.repeat_count; ++r) {
        SeededRng ref_rng = reference_stream(options.seed, sim.sim_id, r);
        const Vector theta_r = sample_reference(options.policy, sim.x, dim, normalization, ref_rng);
        RankStatistic rank = drp_rank(draws, truth, theta_r, options.metric);
        rank.sim_id = sim.sim_id;
        out.push_back(std::move(rank));
      }
    });
  });

  std::vector<RankStatistic> ranks;
  ranks.reserve(dataset.n_sims() * options.repeat_count);
  for (auto& block : per_sim)
    for (auto& r : block) ranks.push_back(std::move(r));
  return ranks;
}

CoverageCurve drp_test(const JointSampleSet& dataset, const SampleProvider& samples,
                       const DrpOptions& options) {
  auto ranks = drp_ranks(dataset, samples, options);
  const std::size_t n_post = common_n_post(ranks);
  CoverageCurve curve = ecp_curve(std::move(ranks), options.levels, n_post, Method::Drp,
                                  options.band_z);
  curve.n_sims = dataset.n_sims();
  curve.band = numerics::binomial_band(curve.credibility_levels, curve.n_sims, options.band_z);
  return curve;
}

CoverageCurve drp_test(const JointSampleSet& dataset, const PosteriorSampler& sampler,
                       const DrpOptions& options) {
  if (options.n_post == 0) throw DomainError("drp_test: n_post must be >= 1");
  if (sampler.dim() != dataset.dim_theta()) {
    throw DimensionError("drp_test: sampler dimension does not match the dataset");
  }
  const SampleProvider provider = [&](std::size_t i, SeededRng& rng) {
    return sampler.sample(dataset[i].x, options.n_post, rng);
  };
  return drp_test(dataset, provider, options);
}

std::vector<RankStatistic> hpd_ranks(const JointSampleSet& dataset,
                                     const PosteriorSampler& sampler, const HpdOptions& options) {
  if (!sampler.has_density()) {
    throw CapabilityError("hpd_test: the posterior sampler does not provide densities");
  }
  if (options.n_post == 0) throw DomainError("hpd_test: n_post must be >= 1");
  if (dataset.n_sims() == 0) throw DomainError("hpd_test: empty dataset");
  const std::size_t dim = dataset.dim_theta();
  if (sampler.dim() != dim) {
    throw DimensionError("hpd_test: sampler dimension does not match the dataset");
  }

  std::vector<RankStatistic> ranks(dataset.n_sims());
  numerics::parallel_for(dataset.n_sims(), options.threads, [&](std::size_t i) {
    const Simulation& sim = dataset[i];
    with_sim_context(sim.sim_id, [&] {
      SeededRng rng = posterior_stream(options.seed, sim.sim_id);
      const DenseMatrix draws = sampler.sample(sim.x, options.n_post, rng);
      check_samples(draws, dim);
      std::vector<double> log_densities(draws.rows());
      for (std::size_t j = 0; j < draws.rows(); ++j) {
        log_densities[j] = sampler.log_density(draws.row(j), sim.x);
      }
      const double truth = sampler.log_density(sim.theta_true, sim.x);
      RankStatistic rank = hpd_rank_log(log_densities, truth);
      rank.sim_id = sim.sim_id;
      ranks[i] = std::move(rank);
    });
  });
  return ranks;
}

CoverageCurve hpd_test(const JointSampleSet& dataset, const PosteriorSampler& sampler,
                       const HpdOptions& options) {
  auto ranks = hpd_ranks(dataset, sampler, options);
  return ecp_curve(std::move(ranks), options.levels, options.n_post, Method::Hpd, options.band_z);
}

}  // namespace drpkit::coverage
