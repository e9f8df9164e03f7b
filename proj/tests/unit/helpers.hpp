#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "drpkit/coverage/types.hpp"
#include "drpkit/numerics/normal.hpp"

namespace testing_helpers {

using drpkit::coverage::DenseMatrix;
using drpkit::coverage::Observation;
using drpkit::coverage::SeededRng;

// Returns stored samples; x[0] is the index of the block to return.
class FixedSampler final : public drpkit::coverage::PosteriorSampler {
 public:
  FixedSampler(std::size_t dim, std::vector<DenseMatrix> blocks)
      : dim_(dim), blocks_(std::move(blocks)) {}
  std::size_t dim() const override { return dim_; }
  DenseMatrix sample(const Observation& x, std::size_t, SeededRng&) const override {
    return blocks_.at(static_cast<std::size_t>(x.at(0)));
  }
  bool has_density() const override { return true; }
  // standard normal in every coordinate
  double log_density(std::span<const double> theta, const Observation&) const override {
    double s = 0.0;
    for (double v : theta) s += drpkit::numerics::norm_logpdf(v);
    return s;
  }

 private:
  std::size_t dim_;
  std::vector<DenseMatrix> blocks_;
};

// 1-D Gaussian estimator N(x[0], (scale * x[1])^2).
class ScaledGaussian final : public drpkit::coverage::PosteriorSampler {
 public:
  explicit ScaledGaussian(double scale, bool density = true) : scale_(scale), density_(density) {}
  std::size_t dim() const override { return 1; }
  DenseMatrix sample(const Observation& x, std::size_t n, SeededRng& rng) const override {
    DenseMatrix out(n, 1);
    for (std::size_t j = 0; j < n; ++j) out(j, 0) = x[0] + scale_ * x[1] * rng.normal();
    return out;
  }
  bool has_density() const override { return density_; }
  double log_density(std::span<const double> theta, const Observation& x) const override {
    if (!density_) return PosteriorSampler::log_density(theta, x);
    return drpkit::numerics::norm_logpdf((theta[0] - x[0]) / (scale_ * x[1]));
  }

 private:
  double scale_;
  bool density_;
};

// Every draw equals the truth, which is passed through x.
class PointMassSampler final : public drpkit::coverage::PosteriorSampler {
 public:
  explicit PointMassSampler(std::size_t dim) : dim_(dim) {}
  std::size_t dim() const override { return dim_; }
  DenseMatrix sample(const Observation& x, std::size_t n, SeededRng&) const override {
    DenseMatrix out(n, dim_);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t d = 0; d < dim_; ++d) out(j, d) = x[d];
    return out;
  }

 private:
  std::size_t dim_;
};

// theta ~ U(-5, 5), x = [theta + sigma * eps, sigma]: the flat-prior posterior
// is N(x[0], sigma^2) up to truncation, negligible for sigma = 0.05.
inline drpkit::coverage::JointSampleSet noisy_scalar_dataset(std::size_t n, std::uint64_t seed,
                                                             double sigma = 0.05) {
  std::vector<drpkit::coverage::Simulation> sims(n);
  for (std::size_t i = 0; i < n; ++i) {
    SeededRng rng(seed, 1000 + i);
    const double theta = rng.uniform(-5.0, 5.0);
    sims[i] = {i, {theta}, {theta + sigma * rng.normal(), sigma}};
  }
  return drpkit::coverage::JointSampleSet(1, std::move(sims));
}

}  // namespace testing_helpers
