#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "drpkit/coverage/types.hpp"
#include "drpkit/lensing/model.hpp"

namespace drpkit::lensing {

/// Geometric variance-exploding schedule sigma_t = sigma_min (sigma_max / sigma_min)^t.
struct VeSchedule {
  double sigma_min = 0.01;
  double sigma_max = 100.0;
  std::size_t steps = 300;

  void validate() const;
};

/// Throws DomainError for t outside [0, 1].
double sigma_t(const VeSchedule& schedule, double t);

/// g^2(t) = d sigma_t^2 / dt = 2 sigma_t^2 ln(sigma_max / sigma_min).
double diffusion_squared(const VeSchedule& schedule, double t);

enum class ScoreKind { Exact, Biased };

std::string to_string(ScoreKind kind);
ScoreKind parse_score_kind(const std::string& name);

/// grad log N(theta | mu0, Sigma0 + sigma_t^2 I), via the cached eigenbasis.
Vector prior_score(const LensingModel& model, const VeSchedule& schedule,
                   std::span<const double> theta, double t);

/// Gradient in theta of the log time-t likelihood.
///
/// Biased: N(x | A theta, sigma_n^2 I + sigma_t^2 A A^T).
/// Exact:  N(x | A theta_c(theta), sigma_n^2 I + A Sigma_c A^T) with
///         Sigma_c = (Sigma0^-1 + sigma_t^-2 I)^-1 and
///         theta_c = Sigma_c (Sigma0^-1 mu0 + sigma_t^-2 theta), the mean of
///         theta_0 given theta_t (reduces to sigma_t^-2 Sigma_c theta for mu0 = 0).
/// At t = 0 both kinds are evaluated in the sigma_t -> 0 limit,
/// A^T (x - A theta) / sigma_n^2.
Vector likelihood_score(const LensingModel& model, const VeSchedule& schedule, ScoreKind kind,
                        std::span<const double> theta, std::span<const double> x, double t);

/// prior_score + likelihood_score.
Vector posterior_score(const LensingModel& model, const VeSchedule& schedule, ScoreKind kind,
                       std::span<const double> theta, std::span<const double> x, double t);

/// Per-step affine form of the posterior score, score(theta) = b(x) - P theta,
/// with b(x) = F A^T x + c. Built once per (model, schedule, kind).
class ScorePlan {
 public:
  ScorePlan(const LensingModel& model, const VeSchedule& schedule, ScoreKind kind);

  struct Step {
    double t = 0.0;
    double g2 = 0.0;
    Eigen::MatrixXd precision;   ///< P
    Eigen::MatrixXd data_gain;   ///< F
    Eigen::VectorXd offset;      ///< c
  };

  const std::vector<Step>& steps() const noexcept { return steps_; }
  const VeSchedule& schedule() const noexcept { return schedule_; }
  ScoreKind kind() const noexcept { return kind_; }

 private:
  VeSchedule schedule_;
  ScoreKind kind_;
  std::vector<Step> steps_;
};

/// Euler-Maruyama integration of the conditional reverse SDE
///   d theta = -g^2(t) grad log p_t(theta | x) dt + g(t) dw,  t: 1 -> 0,
/// from theta ~ N(mu0, Sigma0 + sigma_max^2 I) in `steps` uniform steps.
class RsdeSampler final : public coverage::PosteriorSampler {
 public:
  RsdeSampler(std::shared_ptr<const LensingModel> model, const VeSchedule& schedule, ScoreKind kind);

  std::size_t dim() const override { return model_->dim_theta(); }

  /// n x D draws. Throws DivergenceError on a non-finite state.
  coverage::DenseMatrix sample(const coverage::Observation& x, std::size_t n,
                               coverage::SeededRng& rng) const override;

  const LensingModel& model() const noexcept { return *model_; }
  const ScorePlan& plan() const noexcept { return plan_; }

 private:
  std::shared_ptr<const LensingModel> model_;
  ScorePlan plan_;
  Eigen::MatrixXd init_factor_;  ///< Q diag(sqrt(lambda + sigma_max^2))
};

/// One reverse-SDE draw.
Vector rsde_sample(const LensingModel& model, const VeSchedule& schedule, ScoreKind kind,
                   std::span<const double> x, SeededRng& rng);

}  // namespace drpkit::lensing
