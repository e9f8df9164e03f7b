#include "drpkit/gaussian/conjugate.hpp"

#include <cmath>

#include "drpkit/error.hpp"
#include "drpkit/numerics/normal.hpp"
#include "drpkit/numerics/rng.hpp"

namespace drpkit::gaussian {

namespace {
constexpr std::uint64_t kGeneratorPurpose = 0x434Fu << 20;
}

void ConjugateConfig::validate() const {
  if (!(sigma0 > 0.0) || !(sigma_x > 0.0)) {
    throw ConfigError("conjugate: sigma0 and sigma_x must be positive");
  }
  if (n_sims == 0) throw ConfigError("conjugate: n_sims must be >= 1");
}

NormalPosterior conjugate_posterior(const ConjugateConfig& config, std::span<const double> x) {
  const double prior_precision = 1.0 / (config.sigma0 * config.sigma0);
  const double noise_precision = 1.0 / (config.sigma_x * config.sigma_x);
  double sum = 0.0;
  for (double v : x) sum += v;
  NormalPosterior p;
  p.variance = 1.0 / (prior_precision + static_cast<double>(x.size()) * noise_precision);
  p.mean = p.variance * (config.mu0 * prior_precision + sum * noise_precision);
  return p;
}

ConjugateBenchmark generate_conjugate(const ConjugateConfig& config, std::uint64_t seed) {
  config.validate();
  ConjugateBenchmark bench;
  bench.config = config;
  bench.posteriors.resize(config.n_sims);
  std::vector<coverage::Simulation> sims(config.n_sims);
  for (std::size_t i = 0; i < config.n_sims; ++i) {
    numerics::SeededRng rng(seed, numerics::derive_stream(i, kGeneratorPurpose));
    const double theta = config.mu0 + config.sigma0 * rng.normal();
    coverage::Observation x(config.n_obs);
    for (auto& v : x) v = theta + config.sigma_x * rng.normal();
    bench.posteriors[i] = conjugate_posterior(config, x);
    sims[i].sim_id = i;
    sims[i].theta_true = {theta};
    sims[i].x = std::move(x);
  }
  bench.dataset = coverage::JointSampleSet(1, std::move(sims));
  return bench;
}

UninformativeSampler::UninformativeSampler(const ConjugateConfig& config) : config_(config) {
  config_.validate();
}

coverage::DenseMatrix UninformativeSampler::sample(const coverage::Observation&, std::size_t n,
                                                   coverage::SeededRng& rng) const {
  coverage::DenseMatrix out(n, 1);
  for (std::size_t j = 0; j < n; ++j) out(j, 0) = config_.mu0 + config_.sigma0 * rng.normal();
  return out;
}

double UninformativeSampler::log_density(std::span<const double> theta,
                                         const coverage::Observation&) const {
  return numerics::norm_logpdf((theta[0] - config_.mu0) / config_.sigma0) - std::log(config_.sigma0);
}

ConjugatePosteriorSampler::ConjugatePosteriorSampler(const ConjugateConfig& config)
    : config_(config) {
  config_.validate();
}

coverage::DenseMatrix ConjugatePosteriorSampler::sample(const coverage::Observation& x,
                                                        std::size_t n,
                                                        coverage::SeededRng& rng) const {
  const NormalPosterior p = conjugate_posterior(config_, x);
  const double sd = std::sqrt(p.variance);
  coverage::DenseMatrix out(n, 1);
  for (std::size_t j = 0; j < n; ++j) out(j, 0) = p.mean + sd * rng.normal();
  return out;
}

double ConjugatePosteriorSampler::log_density(std::span<const double> theta,
                                              const coverage::Observation& x) const {
  const NormalPosterior p = conjugate_posterior(config_, x);
  const double sd = std::sqrt(p.variance);
  return numerics::norm_logpdf((theta[0] - p.mean) / sd) - std::log(sd);
}

coverage::PriorDraw conjugate_prior_policy(const ConjugateConfig& config) {
  const double mu0 = config.mu0;
  const double sigma0 = config.sigma0;
  return coverage::PriorDraw{
      [mu0, sigma0](coverage::SeededRng& rng) { return numerics::Vector{mu0 + sigma0 * rng.normal()}; },
      "prior"};
}

}  // namespace drpkit::gaussian
