#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "drpkit/coverage/normalization.hpp"
#include "drpkit/coverage/reference.hpp"
#include "drpkit/coverage/types.hpp"

namespace drpkit::gaussian {

using coverage::Bounds;
using numerics::Vector;

enum class ToyCase { Correct, Overconfident, Underconfident, Biased };

std::string to_string(ToyCase c);
/// Accepts correct, over, under, biased (and the long enum names).
ToyCase parse_toy_case(const std::string& name);

/// Gaussian toy model. Per simulation theta_true ~ U(theta_bounds)^D and
/// log_base(sigma_d) ~ U(log_sigma_bounds) independently per dimension.
struct ToyConfig {
  std::size_t dim = 10;
  std::size_t n_sims = 500;
  ToyCase toy_case = ToyCase::Correct;
  Bounds theta_bounds{-5.0, 5.0};
  Bounds log_sigma_bounds{-5.0, -1.0};
  double log_base = 10.0;
  double narrow_factor = 0.5;  ///< variance scaling of the overconfident estimator
  double wide_factor = 2.0;    ///< variance scaling of the underconfident estimator

  /// Throws ConfigError.
  void validate() const;
};

struct ToySimulation {
  Vector theta_true;
  Vector sigma;
  Vector estimator_mean;
  Vector estimator_sigma;
};

/// Diagonal Gaussian estimator whose observation payload is
/// x = [mean_0 .. mean_{D-1}, sigma_0 .. sigma_{D-1}].
class DiagonalGaussianSampler final : public coverage::PosteriorSampler {
 public:
  explicit DiagonalGaussianSampler(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const override { return dim_; }
  coverage::DenseMatrix sample(const coverage::Observation& x, std::size_t n,
                               coverage::SeededRng& rng) const override;
  bool has_density() const override { return true; }
  double log_density(std::span<const double> theta, const coverage::Observation& x) const override;

  static coverage::Observation encode(std::span<const double> mean, std::span<const double> sigma);

 private:
  std::size_t dim_;
};

struct ToyBenchmark {
  ToyConfig config;
  std::vector<ToySimulation> sims;
  coverage::JointSampleSet dataset;
  DiagonalGaussianSampler sampler{1};

  /// Normalization bounds (theta_bounds in every dimension).
  std::vector<Bounds> bounds() const;
  /// PriorDraw policy sampling U(theta_bounds)^D.
  coverage::PriorDraw prior_policy() const;
};

/// Per-dimension biased mean
///   theta - sign(theta) * Z(1 - |theta| / half_range) * sigma,
/// Z the standard normal inverse survival function, its argument clamped to
/// [1e-12, 1 - 1e-12]; sign(0) = 0 so theta = 0 carries no bias.
Vector biased_mean(std::span<const double> theta_true, std::span<const double> sigma,
                   double half_range = 5.0);

/// Deterministic given (config, seed); each simulation uses its own substream.
ToyBenchmark generate_toy(const ToyConfig& config, std::uint64_t seed);

}  // namespace drpkit::gaussian
