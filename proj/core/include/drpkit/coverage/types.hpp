#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "drpkit/numerics/matrix.hpp"
#include "drpkit/numerics/rng.hpp"
#include "drpkit/numerics/stats.hpp"

namespace drpkit::coverage {

using numerics::DenseMatrix;
using numerics::SeededRng;
using numerics::Vector;

/// Observation payload. Benchmarks decide what the entries mean.
using Observation = std::vector<double>;

struct Simulation {
  std::uint64_t sim_id = 0;
  Vector theta_true;
  Observation x;
};

/// Pairs (theta_i, x_i) drawn from the true joint distribution.
class JointSampleSet {
 public:
  JointSampleSet() = default;
  /// Validates: dim > 0, every theta finite with `dim` entries, sim ids
  /// a permutation of [0, N).
  JointSampleSet(std::size_t dim_theta, std::vector<Simulation> sims);

  std::size_t dim_theta() const noexcept { return dim_theta_; }
  std::size_t n_sims() const noexcept { return sims_.size(); }
  const std::vector<Simulation>& sims() const noexcept { return sims_; }
  const Simulation& operator[](std::size_t i) const noexcept { return sims_[i]; }

 private:
  std::size_t dim_theta_ = 0;
  std::vector<Simulation> sims_;
};

/// Source of draws from an estimator p̂(theta | x).
class PosteriorSampler {
 public:
  virtual ~PosteriorSampler() = default;

  virtual std::size_t dim() const = 0;

  /// n x dim matrix of draws for observation x.
  virtual DenseMatrix sample(const Observation& x, std::size_t n, SeededRng& rng) const = 0;

  /// Whether log_density is available (required by the HPD test).
  virtual bool has_density() const { return false; }

  /// log p̂(theta | x) up to an x-dependent constant. The default throws
  /// CapabilityError.
  virtual double log_density(std::span<const double> theta, const Observation& x) const;
};

enum class Method { Drp, Hpd };

std::string to_string(Method m);

/// Per-simulation rank statistic.
///
/// For DRP, f is the fraction of posterior samples strictly closer to the
/// reference point than the truth. For HPD, f is the fraction of samples with
/// strictly higher estimator density than the truth, i.e. the credibility of
/// the HPD region whose boundary passes through the truth.
struct RankStatistic {
  std::uint64_t sim_id = 0;
  std::size_t count = 0;   ///< samples beating the truth
  std::size_t n_post = 0;  ///< samples compared
  double f = 0.0;          ///< count / n_post
  Vector theta_r_used;     ///< normalized reference point (DRP only)
};

/// Estimated expected coverage on a credibility grid.
struct CoverageCurve {
  Method method = Method::Drp;
  std::vector<double> credibility_levels;
  std::vector<double> ecp;
  numerics::BinomialBand band;
  std::size_t n_sims = 0;
  std::size_t n_post = 0;
  std::vector<RankStatistic> ranks;  ///< sorted by sim_id
};

/// {0.00, 0.01, ..., 1.00}; entries are k / 100 exactly as computed in double.
std::vector<double> default_credibility_grid(std::size_t intervals = 100);

}  // namespace drpkit::coverage
