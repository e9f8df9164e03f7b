#include "drpkit/gaussian/toy.hpp"

#include <algorithm>
#include <cmath>

#include "drpkit/error.hpp"
#include "drpkit/numerics/normal.hpp"
#include "drpkit/numerics/rng.hpp"

namespace drpkit::gaussian {

namespace {

constexpr std::uint64_t kGeneratorPurpose = 0x5449u << 20;  // disjoint from test purposes
constexpr double kZClamp = 1e-12;

}  // namespace

std::string to_string(ToyCase c) {
  switch (c) {
    case ToyCase::Correct: return "correct";
    case ToyCase::Overconfident: return "over";
    case ToyCase::Underconfident: return "under";
    case ToyCase::Biased: return "biased";
  }
  return "unknown";
}

ToyCase parse_toy_case(const std::string& name) {
  if (name == "correct") return ToyCase::Correct;
  if (name == "over" || name == "overconfident") return ToyCase::Overconfident;
  if (name == "under" || name == "underconfident") return ToyCase::Underconfident;
  if (name == "biased") return ToyCase::Biased;
  throw ConfigError("unknown toy case '" + name + "' (expected correct, over, under, biased)");
}

void ToyConfig::validate() const {
  if (dim == 0) throw ConfigError("toy: dim must be >= 1");
  if (n_sims == 0) throw ConfigError("toy: n_sims must be >= 1");
  if (!(theta_bounds.lo < theta_bounds.hi)) throw ConfigError("toy: theta bounds out of order");
  if (!(log_sigma_bounds.lo < log_sigma_bounds.hi)) {
    throw ConfigError("toy: log-sigma bounds out of order");
  }
  if (!(log_base > 1.0)) throw ConfigError("toy: log base must exceed 1");
  if (!(narrow_factor > 0.0) || !(wide_factor > 0.0)) {
    throw ConfigError("toy: scaling factors must be positive");
  }
  if (toy_case == ToyCase::Biased && theta_bounds.lo != -theta_bounds.hi) {
    throw ConfigError("toy: the biased case needs bounds symmetric about zero");
  }
}

coverage::DenseMatrix DiagonalGaussianSampler::sample(const coverage::Observation& x,
                                                      std::size_t n,
                                                      coverage::SeededRng& rng) const {
  if (x.size() != 2 * dim_) throw DimensionError("diagonal sampler: malformed observation");
  coverage::DenseMatrix out(n, dim_);
  for (std::size_t j = 0; j < n; ++j) {
    auto row = out.row(j);
    for (std::size_t d = 0; d < dim_; ++d) row[d] = x[d] + x[dim_ + d] * rng.normal();
  }
  return out;
}

double DiagonalGaussianSampler::log_density(std::span<const double> theta,
                                            const coverage::Observation& x) const {
  if (x.size() != 2 * dim_ || theta.size() != dim_) {
    throw DimensionError("diagonal sampler: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    const double s = x[dim_ + d];
    acc += numerics::norm_logpdf((theta[d] - x[d]) / s) - std::log(s);
  }
  return acc;
}

coverage::Observation DiagonalGaussianSampler::encode(std::span<const double> mean,
                                                      std::span<const double> sigma) {
  coverage::Observation x(mean.begin(), mean.end());
  x.insert(x.end(), sigma.begin(), sigma.end());
  return x;
}

std::vector<Bounds> ToyBenchmark::bounds() const {
  return std::vector<Bounds>(config.dim, config.theta_bounds);
}

coverage::PriorDraw ToyBenchmark::prior_policy() const {
  const std::size_t dim = config.dim;
  const Bounds b = config.theta_bounds;
  return coverage::PriorDraw{[dim, b](coverage::SeededRng& rng) {
                               Vector v(dim);
                               for (auto& e : v) e = rng.uniform(b.lo, b.hi);
                               return v;
                             },
                             "prior"};
}

Vector biased_mean(std::span<const double> theta_true, std::span<const double> sigma,
                   double half_range) {
  if (theta_true.size() != sigma.size()) throw DimensionError("biased_mean: dimension mismatch");
  Vector out(theta_true.size());
  for (std::size_t d = 0; d < theta_true.size(); ++d) {
    const double theta = theta_true[d];
    if (theta == 0.0) {
      out[d] = theta;
      continue;
    }
    const double arg = std::clamp(1.0 - std::abs(theta) / half_range, kZClamp, 1.0 - kZClamp);
    const double sign = theta > 0.0 ? 1.0 : -1.0;
    out[d] = theta - sign * numerics::norm_isf(arg) * sigma[d];
  }
  return out;
}

ToyBenchmark generate_toy(const ToyConfig& config, std::uint64_t seed) {
  config.validate();
  const std::size_t dim = config.dim;
  ToyBenchmark bench;
  bench.config = config;
  bench.sampler = DiagonalGaussianSampler(dim);
  bench.sims.resize(config.n_sims);

  const double half_range = config.theta_bounds.hi;
  double width_scale = 1.0;
  if (config.toy_case == ToyCase::Overconfident) width_scale = std::sqrt(config.narrow_factor);
  if (config.toy_case == ToyCase::Underconfident) width_scale = std::sqrt(config.wide_factor);

  std::vector<coverage::Simulation> sims(config.n_sims);
  for (std::size_t i = 0; i < config.n_sims; ++i) {
    numerics::SeededRng rng(seed, numerics::derive_stream(i, kGeneratorPurpose));
    ToySimulation& s = bench.sims[i];
    s.theta_true.resize(dim);
    for (auto& t : s.theta_true) {
      // |theta| = half_range would push the bias argument to 0
      do {
        t = rng.uniform(config.theta_bounds.lo, config.theta_bounds.hi);
      } while (config.toy_case == ToyCase::Biased && std::abs(t) >= half_range);
    }
    s.sigma.resize(dim);
    for (auto& sg : s.sigma) {
      sg = std::pow(config.log_base, rng.uniform(config.log_sigma_bounds.lo, config.log_sigma_bounds.hi));
    }
    if (config.toy_case == ToyCase::Biased) {
      s.estimator_mean = biased_mean(s.theta_true, s.sigma, half_range);
    } else {
      s.estimator_mean.resize(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        s.estimator_mean[d] = s.theta_true[d] + s.sigma[d] * rng.normal();
      }
    }
    s.estimator_sigma.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) s.estimator_sigma[d] = width_scale * s.sigma[d];

    sims[i].sim_id = i;
    sims[i].theta_true = s.theta_true;
    sims[i].x = DiagonalGaussianSampler::encode(s.estimator_mean, s.estimator_sigma);
  }
  bench.dataset = coverage::JointSampleSet(dim, std::move(sims));
  return bench;
}

}  // namespace drpkit::gaussian
