#include "drpkit/lensing/sde.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "drpkit/error.hpp"

namespace drpkit::lensing {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd to_eigen(std::span<const double> v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Vector from_eigen(const VectorXd& v) { return Vector(v.data(), v.data() + v.size()); }

// Q diag(d) Q^T
MatrixXd spectral(const LensingModel& model, const VectorXd& d) {
  const MatrixXd q = model.prior_eigenvectors().eigen();
  return q * d.asDiagonal() * q.transpose();
}

VectorXd eigenvalues(const LensingModel& model) { return to_eigen(model.prior_eigenvalues()); }

struct Affine {
  MatrixXd precision;  // P
  MatrixXd data_gain;  // F
  VectorXd offset;     // c
};

// score(theta) = F A^T x + c - P theta at time t.
Affine affine_score(const LensingModel& model, const VeSchedule& schedule, ScoreKind kind, double t) {
  if (!(model.sigma_n() > 0.0)) throw ConfigError("likelihood score: needs sigma_n > 0");
  const auto d = static_cast<Eigen::Index>(model.dim_theta());
  const double s2 = sigma_t(schedule, t) * sigma_t(schedule, t);
  const double n2 = model.sigma_n() * model.sigma_n();
  const VectorXd lambda = eigenvalues(model);
  const VectorXd mu0 = to_eigen(model.prior_mean());
  const MatrixXd gram = model.gram().eigen();

  const MatrixXd hp = spectral(model, (lambda.array() + s2).inverse().matrix());

  Affine out;
  if (t == 0.0) {
    out.data_gain = MatrixXd::Identity(d, d) / n2;
    out.precision = hp + gram / n2;
    out.offset = hp * mu0;
    return out;
  }

  if (kind == ScoreKind::Biased) {
    const MatrixXd g = (n2 * MatrixXd::Identity(d, d) + s2 * gram).llt().solve(MatrixXd::Identity(d, d));
    out.data_gain = g;
    out.precision = hp + g * gram;
    out.offset = hp * mu0;
    return out;
  }

  // Exact: theta_c = m_off + J theta, J = Sigma_c / sigma^2.
  const VectorXd denom = lambda.array() + s2;
  const MatrixXd sigma_c = spectral(model, (lambda.array() * s2 / denom.array()).matrix());
  const MatrixXd jac = spectral(model, (lambda.array() / denom.array()).matrix());
  const VectorXd m_off = spectral(model, (s2 / denom.array()).matrix()) * mu0;
  const MatrixXd w =
      (n2 * MatrixXd::Identity(d, d) + gram * sigma_c).partialPivLu().solve(MatrixXd::Identity(d, d));
  const MatrixXd e = jac * w;
  out.data_gain = e;
  out.precision = hp + e * gram * jac;
  out.offset = hp * mu0 - e * (gram * m_off);
  return out;
}

}  // namespace

void VeSchedule::validate() const {
  if (!(sigma_min > 0.0) || !(sigma_max > sigma_min) || !std::isfinite(sigma_max)) {
    throw ConfigError("schedule: need 0 < sigma_min < sigma_max");
  }
  if (steps == 0) throw ConfigError("schedule: steps must be >= 1");
}

double sigma_t(const VeSchedule& schedule, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("sigma_t: t must lie in [0, 1]");
  return schedule.sigma_min * std::pow(schedule.sigma_max / schedule.sigma_min, t);
}

double diffusion_squared(const VeSchedule& schedule, double t) {
  const double s = sigma_t(schedule, t);
  return 2.0 * s * s * std::log(schedule.sigma_max / schedule.sigma_min);
}

std::string to_string(ScoreKind kind) { return kind == ScoreKind::Exact ? "exact" : "biased"; }

ScoreKind parse_score_kind(const std::string& name) {
  if (name == "exact") return ScoreKind::Exact;
  if (name == "biased") return ScoreKind::Biased;
  throw ConfigError("unknown score kind '" + name + "' (expected exact or biased)");
}

Vector prior_score(const LensingModel& model, const VeSchedule& schedule,
                   std::span<const double> theta, double t) {
  if (theta.size() != model.dim_theta()) throw DimensionError("prior_score: theta has wrong length");
  const double s2 = sigma_t(schedule, t) * sigma_t(schedule, t);
  const MatrixXd q = model.prior_eigenvectors().eigen();
  const VectorXd r = q.transpose() * (to_eigen(theta) - to_eigen(model.prior_mean()));
  const VectorXd scaled = r.array() / (eigenvalues(model).array() + s2);
  return from_eigen(-(q * scaled));
}

Vector likelihood_score(const LensingModel& model, const VeSchedule& schedule, ScoreKind kind,
                        std::span<const double> theta, std::span<const double> x, double t) {
  if (theta.size() != model.dim_theta()) throw DimensionError("likelihood_score: theta has wrong length");
  if (x.size() != model.dim_x()) throw DimensionError("likelihood_score: x has wrong length");
  const Affine full = affine_score(model, schedule, kind, t);
  const Affine prior_only = [&] {
    Affine p;
    const double s2 = sigma_t(schedule, t) * sigma_t(schedule, t);
    p.precision = spectral(model, (eigenvalues(model).array() + s2).inverse().matrix());
    p.offset = p.precision * to_eigen(model.prior_mean());
    return p;
  }();
  const VectorXd atx = to_eigen(numerics::matvec_transposed(model.forward(), x));
  const VectorXd th = to_eigen(theta);
  const VectorXd s = full.data_gain * atx + (full.offset - prior_only.offset) -
                     (full.precision - prior_only.precision) * th;
  return from_eigen(s);
}

Vector posterior_score(const LensingModel& model, const VeSchedule& schedule, ScoreKind kind,
                       std::span<const double> theta, std::span<const double> x, double t) {
  Vector p = prior_score(model, schedule, theta, t);
  const Vector l = likelihood_score(model, schedule, kind, theta, x, t);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += l[i];
  return p;
}

ScorePlan::ScorePlan(const LensingModel& model, const VeSchedule& schedule, ScoreKind kind)
    : schedule_(schedule), kind_(kind) {
  schedule_.validate();
  steps_.reserve(schedule_.steps);
  for (std::size_t k = 0; k < schedule_.steps; ++k) {
    const double t = 1.0 - static_cast<double>(k) / static_cast<double>(schedule_.steps);
    Affine a = affine_score(model, schedule_, kind, t);
    Step step;
    step.t = t;
    step.g2 = diffusion_squared(schedule_, t);
    step.precision = std::move(a.precision);
    step.data_gain = std::move(a.data_gain);
    step.offset = std::move(a.offset);
    steps_.push_back(std::move(step));
  }
}

RsdeSampler::RsdeSampler(std::shared_ptr<const LensingModel> model, const VeSchedule& schedule,
                         ScoreKind kind)
    : model_(std::move(model)), plan_(*model_, schedule, kind) {
  const double smax2 = schedule.sigma_max * schedule.sigma_max;
  const VectorXd scale = (eigenvalues(*model_).array() + smax2).sqrt();
  init_factor_ = MatrixXd(model_->prior_eigenvectors().eigen()) * scale.asDiagonal();
}

coverage::DenseMatrix RsdeSampler::sample(const coverage::Observation& x, std::size_t n,
                                          coverage::SeededRng& rng) const {
  const LensingModel& m = *model_;
  if (x.size() != m.dim_x()) throw DimensionError("rsde: observation has wrong length");
  const auto d = static_cast<Eigen::Index>(m.dim_theta());
  const auto cols = static_cast<Eigen::Index>(n);
  const double dt = 1.0 / static_cast<double>(plan_.schedule().steps);
  const VectorXd atx = to_eigen(numerics::matvec_transposed(m.forward(), x));
  const VectorXd mu0 = to_eigen(m.prior_mean());

  // columns are samples
  MatrixXd z(d, cols);
  auto fill_normals = [&] {
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < d; ++i) z(i, j) = rng.normal();
  };
  fill_normals();
  MatrixXd state = init_factor_ * z;
  state.colwise() += mu0;

  MatrixXd drift(d, cols);
  const auto& steps = plan_.steps();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& s = steps[k];
    const VectorXd b = s.data_gain * atx + s.offset;
    drift.noalias() = -s.precision * state;
    drift.colwise() += b;
    fill_normals();
    state += (s.g2 * dt) * drift + std::sqrt(s.g2 * dt) * z;
    if (!state.allFinite()) {
      throw DivergenceError("rsde: non-finite state at step " + std::to_string(k), k);
    }
  }

  coverage::DenseMatrix out(n, m.dim_theta());
  out.eigen() = state.transpose();
  return out;
}

Vector rsde_sample(const LensingModel& model, const VeSchedule& schedule, ScoreKind kind,
                   std::span<const double> x, SeededRng& rng) {
  // non-owning handle; the sampler does not outlive this call
  const std::shared_ptr<const LensingModel> handle(&model, [](const LensingModel*) {});
  const RsdeSampler sampler(handle, schedule, kind);
  const coverage::DenseMatrix draws = sampler.sample(coverage::Observation(x.begin(), x.end()), 1, rng);
  return Vector(draws.row(0).begin(), draws.row(0).end());
}

}  // namespace drpkit::lensing
