#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "drpkit/coverage/reference.hpp"
#include "drpkit/coverage/types.hpp"

namespace drpkit::gaussian {

/// theta ~ N(mu0, sigma0^2); x_i ~ N(theta, sigma_x^2), i = 1..n_obs.
struct ConjugateConfig {
  std::size_t n_obs = 50;
  double mu0 = 0.0;
  double sigma0 = 1.0;
  double sigma_x = 0.1;
  std::size_t n_sims = 500;

  void validate() const;
};

struct NormalPosterior {
  double mean = 0.0;
  double variance = 0.0;
};

/// s = (1/sigma0^2 + n/sigma_x^2)^-1, m = s (mu0/sigma0^2 + sum(x)/sigma_x^2).
NormalPosterior conjugate_posterior(const ConjugateConfig& config, std::span<const double> x);

struct ConjugateBenchmark {
  ConjugateConfig config;
  coverage::JointSampleSet dataset;      ///< x = the n_obs observations
  std::vector<NormalPosterior> posteriors;  ///< indexed by sim id
};

ConjugateBenchmark generate_conjugate(const ConjugateConfig& config, std::uint64_t seed);

/// The prior used as a posterior estimator: ignores x entirely.
class UninformativeSampler final : public coverage::PosteriorSampler {
 public:
  explicit UninformativeSampler(const ConjugateConfig& config);

  std::size_t dim() const override { return 1; }
  coverage::DenseMatrix sample(const coverage::Observation& x, std::size_t n,
                               coverage::SeededRng& rng) const override;
  bool has_density() const override { return true; }
  double log_density(std::span<const double> theta, const coverage::Observation& x) const override;

 private:
  ConjugateConfig config_;
};

/// The analytic posterior; the optimal estimator for this model.
class ConjugatePosteriorSampler final : public coverage::PosteriorSampler {
 public:
  explicit ConjugatePosteriorSampler(const ConjugateConfig& config);

  std::size_t dim() const override { return 1; }
  coverage::DenseMatrix sample(const coverage::Observation& x, std::size_t n,
                               coverage::SeededRng& rng) const override;
  bool has_density() const override { return true; }
  double log_density(std::span<const double> theta, const coverage::Observation& x) const override;

 private:
  ConjugateConfig config_;
};

/// PriorDraw reference policy sampling N(mu0, sigma0^2).
coverage::PriorDraw conjugate_prior_policy(const ConjugateConfig& config);

}  // namespace drpkit::gaussian
