#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "drpkit/coverage/metric.hpp"
#include "drpkit/coverage/normalization.hpp"
#include "drpkit/coverage/reference.hpp"
#include "drpkit/coverage/types.hpp"

namespace drpkit::coverage {

/// Substream purposes under a test seed. Posterior draws for sim i come from
/// stream derive_stream(i, kPosteriorPurpose); reference point r for sim i
/// from derive_stream(i, kReferencePurpose + r).
inline constexpr std::uint64_t kPosteriorPurpose = 0;
inline constexpr std::uint64_t kReferencePurpose = 1;

SeededRng posterior_stream(std::uint64_t seed, std::uint64_t sim_id);
SeededRng reference_stream(std::uint64_t seed, std::uint64_t sim_id, std::uint64_t repeat);

struct DrpOptions {
  ReferencePolicy policy = UnitHypercubeUniform{};
  DistanceMetric metric = Euclidean{};
  std::size_t n_post = 500;
  std::vector<double> levels = default_credibility_grid();
  std::uint64_t seed = 0;
  /// Explicit normalization bounds; empirical min/max when absent.
  std::optional<std::vector<Bounds>> bounds;
  /// Independent reference draws per simulation; ranks are pooled.
  std::size_t repeat_count = 1;
  double band_z = 3.0;
  std::size_t threads = 0;  ///< 0 = DRPKIT_THREADS / hardware
};

struct HpdOptions {
  std::size_t n_post = 500;
  std::vector<double> levels = default_credibility_grid();
  std::uint64_t seed = 0;
  double band_z = 3.0;
  std::size_t threads = 0;
};

/// Supplies the n x D raw posterior samples for the sim at `index`.
using SampleProvider = std::function<DenseMatrix(std::size_t index, SeededRng& rng)>;

/// DRP coverage test: per sim, draw n_post samples, one reference point per
/// repeat, normalize everything with the same map, rank, and assemble.
/// Deterministic given the seed and independent of thread count and of the
/// order of sims in the dataset. Errors are rethrown as SimulationError.
CoverageCurve drp_test(const JointSampleSet& dataset, const PosteriorSampler& sampler,
                       const DrpOptions& options);

/// DRP test on externally supplied samples (e.g. read from files). The
/// provider receives the posterior substream so that generated and replayed
/// runs consume identical streams for the reference points.
CoverageCurve drp_test(const JointSampleSet& dataset, const SampleProvider& samples,
                       const DrpOptions& options);

/// HPD coverage test. Throws CapabilityError if the sampler has no density.
CoverageCurve hpd_test(const JointSampleSet& dataset, const PosteriorSampler& sampler,
                       const HpdOptions& options);

/// Rank statistics only, before assembly into a curve.
std::vector<RankStatistic> drp_ranks(const JointSampleSet& dataset, const SampleProvider& samples,
                                     const DrpOptions& options);
std::vector<RankStatistic> hpd_ranks(const JointSampleSet& dataset,
                                     const PosteriorSampler& sampler, const HpdOptions& options);

}  // namespace drpkit::coverage
