#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "drpkit/coverage/curve.hpp"
#include "drpkit/coverage/engine.hpp"
#include "drpkit/error.hpp"
#include "drpkit/gaussian/conjugate.hpp"
#include "drpkit/gaussian/toy.hpp"
#include "drpkit/io/files.hpp"
#include "drpkit/io/svg.hpp"
#include "drpkit/lensing/model.hpp"
#include "drpkit/lensing/sde.hpp"
#include "drpkit/numerics/stats.hpp"

namespace drpkit::cli {

namespace {

namespace fs = std::filesystem;
using coverage::CoverageCurve;
using coverage::DenseMatrix;
using coverage::JointSampleSet;
using coverage::SeededRng;
using io::KeyValues;

constexpr std::uint64_t kLensingPurpose = 0x4C45u << 20;

std::string str(double v) { return io::format_double(v); }
std::string str(std::size_t v) { return std::to_string(v); }

void require_positive(std::size_t v, const char* flag) {
  if (v == 0) throw UsageError(std::string(flag) + " must be >= 1");
}

void write_resolved_config(const fs::path& dir, const std::string& command, const KeyValues& kv) {
  io::write_file_atomic(dir / "resolved_config.txt",
                        "# drpkit " + command + "\n" + io::format_config(kv));
}

// Writes the CSV and prints a one-line summary.
fs::path write_curve(const fs::path& dir, const std::string& name, const CoverageCurve& curve,
                     const io::CoverageMeta& meta) {
  const fs::path path = dir / name;
  io::write_file_atomic(path, io::format_coverage_csv(curve, meta));
  const auto s = coverage::compare_to_diagonal(curve);
  std::printf("%s: %zu/%zu levels in band, max |ecp-c| = %.4f (%.2f half-widths)\n",
              path.string().c_str(), s.levels_in_band, s.levels, s.max_abs_deviation,
              s.max_band_ratio);
  return path;
}

void write_svg(const fs::path& path, const std::vector<fs::path>& csvs, const std::string& title) {
  std::vector<io::PlotSeries> series;
  for (const auto& p : csvs) {
    io::CoverageTable t = io::read_coverage_csv(p);
    std::string label = io::default_label(t);
    series.push_back({std::move(label), std::move(t)});
  }
  io::write_file_atomic(path, io::render_coverage_svg(series, title));
  std::printf("%s\n", path.string().c_str());
}

io::CoverageMeta drp_meta(const CoverageCurve& c, std::uint64_t seed,
                          const coverage::DrpOptions& o) {
  return {"drp", c.n_sims, c.n_post, seed, coverage::describe(o.policy),
          coverage::describe(o.metric), ""};
}

io::CoverageMeta hpd_meta(const CoverageCurve& c, std::uint64_t seed) {
  return {"hpd", c.n_sims, c.n_post, seed, "none", "none", ""};
}

// ---------------------------------------------------------------- toy

struct ToyArgs {
  std::string toy_case = "correct";
  std::size_t dim = 10;
  std::size_t n_sims = 500;
  std::size_t n_post = 500;
  std::uint64_t seed = 0;
  std::vector<std::string> methods{"drp", "hpd"};
  std::string ref_policy = "hypercube";
  std::string out;
  bool svg = false;
  bool dump = false;
};

void run_toy(const ToyArgs& a) {
  require_positive(a.dim, "--dim");
  require_positive(a.n_sims, "--n-sims");
  require_positive(a.n_post, "--n-post");
  if (a.methods.empty()) throw UsageError("--methods needs at least one of drp, hpd");

  gaussian::ToyConfig cfg;
  cfg.dim = a.dim;
  cfg.n_sims = a.n_sims;
  cfg.toy_case = gaussian::parse_toy_case(a.toy_case);
  const gaussian::ToyBenchmark bench = gaussian::generate_toy(cfg, a.seed);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  std::vector<fs::path> written;
  for (const auto& m : a.methods) {
    if (m == "drp") {
      coverage::DrpOptions o;
      if (a.ref_policy == "prior") o.policy = bench.prior_policy();
      o.n_post = a.n_post;
      o.seed = a.seed;
      o.bounds = bench.bounds();
      const auto curve = coverage::drp_test(bench.dataset, bench.sampler, o);
      written.push_back(write_curve(dir, "drp.csv", curve, drp_meta(curve, a.seed, o)));
    } else {
      coverage::HpdOptions o;
      o.n_post = a.n_post;
      o.seed = a.seed;
      const auto curve = coverage::hpd_test(bench.dataset, bench.sampler, o);
      written.push_back(write_curve(dir, "hpd.csv", curve, hpd_meta(curve, a.seed)));
    }
  }

  if (a.dump) {
    // the exact inputs drp_test consumed, for replay through `coverage`
    std::vector<DenseMatrix> samples(bench.dataset.n_sims());
    for (const auto& sim : bench.dataset.sims()) {
      SeededRng rng = coverage::posterior_stream(a.seed, sim.sim_id);
      samples[sim.sim_id] = bench.sampler.sample(sim.x, a.n_post, rng);
    }
    io::write_file_atomic(dir / "joint.csv", io::format_joint_csv(bench.dataset));
    io::write_file_atomic(dir / "posterior.csv", io::format_posterior_csv(samples));
    io::write_file_atomic(dir / "bounds.txt", io::format_bounds_file(bench.bounds()));
  }
  if (a.svg) write_svg(dir / "coverage.svg", written, "Gaussian toy model, " + a.toy_case + " case");

  std::string methods;
  for (const auto& m : a.methods) methods += (methods.empty() ? "" : ",") + m;
  write_resolved_config(dir, "toy",
                        {{"case", a.toy_case},
                         {"dim", str(a.dim)},
                         {"n-sims", str(a.n_sims)},
                         {"n-post", str(a.n_post)},
                         {"seed", str(a.seed)},
                         {"methods", methods},
                         {"ref-policy", a.ref_policy},
                         {"out", a.out},
                         {"svg", a.svg ? "true" : "false"},
                         {"dump", a.dump ? "true" : "false"},
                         {"theta-bounds", str(cfg.theta_bounds.lo) + ":" + str(cfg.theta_bounds.hi)},
                         {"log-sigma-bounds",
                          str(cfg.log_sigma_bounds.lo) + ":" + str(cfg.log_sigma_bounds.hi)},
                         {"log-base", str(cfg.log_base)},
                         {"narrow-factor", str(cfg.narrow_factor)},
                         {"wide-factor", str(cfg.wide_factor)},
                         {"band-z", "3"},
                         {"levels", "101"}});
}

// ---------------------------------------------------------------- uninformative

struct UninformativeArgs {
  std::size_t n_sims = 500;
  std::size_t n_post = 500;
  std::uint64_t seed = 0;
  double u_max = 1.0;
  std::string out;
  bool svg = false;
};

void run_uninformative(const UninformativeArgs& a) {
  require_positive(a.n_sims, "--n-sims");
  require_positive(a.n_post, "--n-post");
  if (!(a.u_max >= 0.0) || !std::isfinite(a.u_max)) throw UsageError("--u-max must be >= 0");

  gaussian::ConjugateConfig cfg;
  cfg.n_sims = a.n_sims;
  const auto bench = gaussian::generate_conjugate(cfg, a.seed);
  const gaussian::UninformativeSampler sampler(cfg);
  const fs::path dir(a.out);
  fs::create_directories(dir);

  std::vector<fs::path> written;
  {
    coverage::HpdOptions o;
    o.n_post = a.n_post;
    o.seed = a.seed;
    const auto curve = coverage::hpd_test(bench.dataset, sampler, o);
    auto meta = hpd_meta(curve, a.seed);
    meta.label = "HPD";
    written.push_back(write_curve(dir, "hpd.csv", curve, meta));
  }
  const auto drp = [&](coverage::ReferencePolicy policy, const std::string& name,
                       const std::string& label) {
    coverage::DrpOptions o;
    o.policy = std::move(policy);
    o.n_post = a.n_post;
    o.seed = a.seed;
    const auto curve = coverage::drp_test(bench.dataset, sampler, o);
    auto meta = drp_meta(curve, a.seed, o);
    meta.label = label;
    written.push_back(write_curve(dir, name, curve, meta));
  };
  drp(gaussian::conjugate_prior_policy(cfg), "drp-prior.csv", "DRP, prior reference");
  drp(coverage::DataShift{0, a.u_max}, "drp-datashift.csv", "DRP, x-dependent reference");
  if (a.svg) write_svg(dir / "coverage.svg", written, "Prior used as the posterior estimator");

  write_resolved_config(dir, "uninformative",
                        {{"n-sims", str(a.n_sims)},
                         {"n-post", str(a.n_post)},
                         {"seed", str(a.seed)},
                         {"u-max", str(a.u_max)},
                         {"out", a.out},
                         {"svg", a.svg ? "true" : "false"},
                         {"n-obs", str(cfg.n_obs)},
                         {"mu0", str(cfg.mu0)},
                         {"sigma0", str(cfg.sigma0)},
                         {"sigma-x", str(cfg.sigma_x)},
                         {"bounds", "auto"},
                         {"band-z", "3"},
                         {"levels", "101"}});
}

// ---------------------------------------------------------------- lensing

struct LensingArgs {
  std::string estimator = "exact";
  std::size_t source_size = 8;
  std::size_t n_sims = 100;
  std::size_t n_post = 200;
  std::size_t steps = 300;
  std::uint64_t seed = 0;
  std::uint64_t model_seed = 0;
  double sigma_min = 0.01;
  double sigma_max = 100.0;
  std::string ref_policy = "prior";
  std::size_t n_summary = 4;
  std::string out;
  bool svg = false;
};

void run_lensing(const LensingArgs& a) {
  require_positive(a.n_sims, "--n-sims");
  require_positive(a.n_post, "--n-post");
  require_positive(a.steps, "--steps");
  if (!(a.sigma_min > 0.0 && a.sigma_max > a.sigma_min)) {
    throw UsageError("need 0 < --sigma-min < --sigma-max");
  }

  lensing::LensingConfig lc;
  lc.source_side = a.source_size;
  lc.image_side = 2 * a.source_size;
  lc.model_seed = a.model_seed;
  auto model = std::make_shared<const lensing::LensingModel>(lensing::LensingModel::build(lc));
  lensing::VeSchedule schedule{a.sigma_min, a.sigma_max, a.steps};
  const auto kind = lensing::parse_score_kind(a.estimator);
  const lensing::RsdeSampler sampler(model, schedule, kind);

  std::vector<coverage::Simulation> sims(a.n_sims);
  for (std::size_t i = 0; i < a.n_sims; ++i) {
    SeededRng rng(a.seed, numerics::derive_stream(i, kLensingPurpose));
    auto draw = lensing::simulate(*model, rng);
    sims[i] = {i, std::move(draw.theta), std::move(draw.x)};
  }
  const JointSampleSet dataset(model->dim_theta(), std::move(sims));

  coverage::DrpOptions o;
  if (a.ref_policy == "prior") {
    o.policy = coverage::PriorDraw{[model](SeededRng& rng) {
                                     return numerics::mvn_sample(model->prior_mean(),
                                                                 model->prior_cholesky(), rng);
                                   },
                                   "prior"};
  }
  o.n_post = a.n_post;
  o.seed = a.seed;
  const fs::path dir(a.out);
  fs::create_directories(dir);
  const auto curve = coverage::drp_test(dataset, sampler, o);
  auto meta = drp_meta(curve, a.seed, o);
  meta.label = "DRP, " + a.estimator + " sampler";
  const auto csv = write_curve(dir, "drp.csv", curve, meta);

  // per-pixel truth / posterior mean / std / residual for the first sims,
  // regenerated from the same substreams the test used
  std::string summary = "sim_id,pixel,row,col,truth,mean,std,residual\n";
  const std::size_t side = a.source_size;
  for (std::size_t i = 0; i < std::min(a.n_summary, dataset.n_sims()); ++i) {
    SeededRng rng = coverage::posterior_stream(a.seed, i);
    const DenseMatrix draws = sampler.sample(dataset[i].x, a.n_post, rng);
    const auto mom = numerics::sample_moments(draws.data(), draws.cols());
    for (std::size_t p = 0; p < model->dim_theta(); ++p) {
      const double truth = dataset[i].theta_true[p];
      const double sd = a.n_post > 1 ? std::sqrt(mom.covariance[p * draws.cols() + p]) : 0.0;
      summary += str(i) + ',' + str(p) + ',' + str(p / side) + ',' + str(p % side) + ',' +
                 str(truth) + ',' + str(mom.mean[p]) + ',' + str(sd) + ',' + str(mom.mean[p] - truth) +
                 '\n';
    }
  }
  io::write_file_atomic(dir / "summary.csv", summary);
  if (a.svg) write_svg(dir / "coverage.svg", {csv}, "Linear-Gaussian lensing analog");

  write_resolved_config(dir, "lensing",
                        {{"estimator", a.estimator},
                         {"source-size", str(a.source_size)},
                         {"n-sims", str(a.n_sims)},
                         {"n-post", str(a.n_post)},
                         {"steps", str(a.steps)},
                         {"seed", str(a.seed)},
                         {"model-seed", str(a.model_seed)},
                         {"sigma-min", str(a.sigma_min)},
                         {"sigma-max", str(a.sigma_max)},
                         {"ref-policy", a.ref_policy},
                         {"n-summary", str(a.n_summary)},
                         {"out", a.out},
                         {"svg", a.svg ? "true" : "false"},
                         {"image-size", str(lc.image_side)},
                         {"sigma-n", str(lc.sigma_n)},
                         {"kernel-scale", str(lc.kernel_scale)},
                         {"bounds", "auto"},
                         {"band-z", "3"},
                         {"levels", "101"}});
}

// ---------------------------------------------------------------- coverage

struct CoverageArgs {
  std::string joint;
  std::string posterior;
  std::string obs;
  std::string ref_policy = "hypercube";
  std::string metric = "euclidean";
  std::string bounds = "auto";
  std::uint64_t seed = 0;
  std::string out;
  bool svg = false;
};

coverage::ReferencePolicy parse_policy(const std::string& spec, std::size_t dim) {
  if (spec == "hypercube") return coverage::UnitHypercubeUniform{};
  if (spec.rfind("prior-file:", 0) == 0) {
    const fs::path file = spec.substr(11);
    if (file.empty()) throw UsageError("--ref-policy prior-file: needs a file name");
    auto rows = std::make_shared<const std::vector<coverage::Vector>>(io::read_theta_table(file, dim));
    return coverage::PriorDraw{[rows](SeededRng& rng) { return (*rows)[rng.below(rows->size())]; },
                               "prior-file"};
  }
  if (spec.rfind("datashift:", 0) == 0) {
    const std::string body = spec.substr(10);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw UsageError("--ref-policy datashift needs k,u");
    try {
      std::size_t used = 0;
      const long long k = std::stoll(body.substr(0, comma), &used);
      if (used != comma || k < 0) throw std::invalid_argument("k");
      const std::string ustr = body.substr(comma + 1);
      const double u = std::stod(ustr, &used);
      if (used != ustr.size() || !(u >= 0.0) || !std::isfinite(u)) throw std::invalid_argument("u");
      return coverage::DataShift{static_cast<std::size_t>(k), u};
    } catch (const std::logic_error&) {
      throw UsageError("--ref-policy datashift:k,u needs an integer k >= 0 and a number u >= 0");
    }
  }
  throw UsageError("--ref-policy must be hypercube, prior-file:FILE or datashift:k,u");
}

void run_coverage(const CoverageArgs& a) {
  const auto joint = io::read_joint_csv(a.joint);
  const std::size_t n = joint.theta.size();
  std::vector<coverage::Observation> obs;
  if (!a.obs.empty()) obs = io::read_observation_csv(a.obs, n);
  auto posterior = io::read_posterior_csv(a.posterior, n, joint.dim);

  std::vector<coverage::Simulation> sims(n);
  for (std::size_t i = 0; i < n; ++i) {
    sims[i].sim_id = i;
    sims[i].theta_true = joint.theta[i];
    if (!obs.empty()) sims[i].x = std::move(obs[i]);
  }
  const JointSampleSet dataset(joint.dim, std::move(sims));

  coverage::DrpOptions o;
  o.policy = parse_policy(a.ref_policy, joint.dim);
  if (std::holds_alternative<coverage::DataShift>(o.policy) && a.obs.empty()) {
    throw UsageError("--ref-policy datashift needs --obs");
  }
  if (a.metric == "euclidean") {
    o.metric = coverage::Euclidean{};
  } else if (a.metric.rfind("weighted:", 0) == 0) {
    auto w = io::read_weights_file(a.metric.substr(9));
    if (w.size() != joint.dim) {
      throw UsageError("--metric weighted: expected " + str(joint.dim) + " weights, found " +
                       str(w.size()));
    }
    for (double v : w) {
      if (!(v > 0.0)) throw UsageError("--metric weighted: every weight must be > 0");
    }
    o.metric = coverage::WeightedEuclidean{std::move(w)};
  } else {
    throw UsageError("--metric must be euclidean or weighted:FILE");
  }
  if (a.bounds != "auto") {
    auto b = io::read_bounds_file(a.bounds);
    if (b.size() != joint.dim) {
      throw io::SchemaError(a.bounds, 0,
                            "expected " + str(joint.dim) + " bounds lines, found " + str(b.size()));
    }
    o.bounds = std::move(b);
  }
  o.seed = a.seed;

  const coverage::SampleProvider provider = [&](std::size_t i, SeededRng&) {
    return posterior[dataset[i].sim_id];
  };
  const fs::path dir(a.out);
  fs::create_directories(dir);
  const auto curve = coverage::drp_test(dataset, provider, o);
  const auto csv = write_curve(dir, "drp.csv", curve, drp_meta(curve, a.seed, o));
  if (a.svg) write_svg(dir / "coverage.svg", {csv}, "");

  write_resolved_config(dir, "coverage",
                        {{"joint", a.joint},
                         {"posterior", a.posterior},
                         {"obs", a.obs},
                         {"ref-policy", a.ref_policy},
                         {"metric", a.metric},
                         {"bounds", a.bounds},
                         {"seed", str(a.seed)},
                         {"out", a.out},
                         {"svg", a.svg ? "true" : "false"},
                         {"band-z", "3"},
                         {"levels", "101"}});
}

// ---------------------------------------------------------------- plot

struct PlotArgs {
  std::vector<std::string> inputs;
  std::string out;
  std::string title;
};

void run_plot(const PlotArgs& a) {
  std::vector<fs::path> paths(a.inputs.begin(), a.inputs.end());
  write_svg(a.out, paths, a.title);
}

// CLI11 only reads config files for the top-level app, so --config on a
// subcommand is expanded here: every key naming an option of the subcommand
// and not already on the command line becomes `--key value`. Other keys
// (derived values echoed into resolved_config.txt) are skipped.
void expand_config(CLI::App& app, std::vector<std::string>& args) {
  if (args.size() < 2) return;
  const CLI::App* sub = app.get_subcommand_no_throw(args[1]);
  if (sub == nullptr) return;
  std::string path;
  std::set<std::string> given;
  for (std::size_t i = 2; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const auto eq = a.find('=');
    const std::string name = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
    given.insert(name);
    if (name == "config") {
      path = eq != std::string::npos ? a.substr(eq + 1) : (i + 1 < args.size() ? args[i + 1] : "");
    }
  }
  if (path.empty()) return;
  for (const auto& [key, value] : io::read_config(path)) {
    if (key == "config" || given.count(key) || value.empty()) continue;
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) continue;
    if (opt->get_expected_max() == 0) {
      if (value == "true") args.push_back("--" + key);
    } else {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"drpkit: expected-coverage tests for posterior estimators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "drpkit 0.1.0");
  std::string config_path;

  ToyArgs toy;
  auto* t = app.add_subcommand("toy", "Gaussian toy model (correct, over, under, biased)");
  t->add_option("--config", config_path, "key=value file of options; command-line flags win");
  t->add_option("--case", toy.toy_case, "estimator case")
      ->check(CLI::IsMember({"correct", "over", "under", "biased"}))
      ->capture_default_str();
  t->add_option("--dim", toy.dim, "parameter dimension D")->capture_default_str();
  t->add_option("--n-sims", toy.n_sims, "number of simulations")->capture_default_str();
  t->add_option("--n-post", toy.n_post, "posterior samples per simulation")->capture_default_str();
  t->add_option("--seed", toy.seed, "master seed")->capture_default_str();
  t->add_option("--methods", toy.methods, "drp,hpd")
      ->delimiter(',')
      ->check(CLI::IsMember({"drp", "hpd"}))
      ->capture_default_str();
  t->add_option("--ref-policy", toy.ref_policy, "DRP reference points")
      ->check(CLI::IsMember({"hypercube", "prior"}))
      ->capture_default_str();
  t->add_option("--out", toy.out, "output directory")->required();
  t->add_flag("--svg", toy.svg, "also write coverage.svg");
  t->add_flag("--dump", toy.dump, "also write joint.csv, posterior.csv and bounds.txt");

  UninformativeArgs uni;
  auto* u = app.add_subcommand("uninformative", "prior used as the posterior estimator");
  u->add_option("--config", config_path, "key=value file of options; command-line flags win");
  u->add_option("--n-sims", uni.n_sims, "number of simulations")->capture_default_str();
  u->add_option("--n-post", uni.n_post, "posterior samples per simulation")->capture_default_str();
  u->add_option("--seed", uni.seed, "master seed")->capture_default_str();
  u->add_option("--u-max", uni.u_max, "half-width of the x-dependent reference shift")
      ->capture_default_str();
  u->add_option("--out", uni.out, "output directory")->required();
  u->add_flag("--svg", uni.svg, "also write coverage.svg");

  LensingArgs lens;
  auto* l = app.add_subcommand("lensing", "linear-Gaussian inverse problem with reverse-SDE samplers");
  l->add_option("--config", config_path, "key=value file of options; command-line flags win");
  l->add_option("--estimator", lens.estimator, "exact or biased likelihood score")
      ->check(CLI::IsMember({"exact", "biased"}))
      ->capture_default_str();
  l->add_option("--source-size", lens.source_size, "source grid side (image side is twice this)")
      ->check(CLI::IsMember({8, 16}))
      ->capture_default_str();
  l->add_option("--n-sims", lens.n_sims, "number of simulations")->capture_default_str();
  l->add_option("--n-post", lens.n_post, "posterior samples per simulation")->capture_default_str();
  l->add_option("--steps", lens.steps, "Euler-Maruyama steps")->capture_default_str();
  l->add_option("--seed", lens.seed, "master seed")->capture_default_str();
  l->add_option("--model-seed", lens.model_seed, "seed for the operator and prior")
      ->capture_default_str();
  l->add_option("--sigma-min", lens.sigma_min, "VE schedule sigma at t = 0")->capture_default_str();
  l->add_option("--sigma-max", lens.sigma_max, "VE schedule sigma at t = 1")->capture_default_str();
  l->add_option("--ref-policy", lens.ref_policy, "DRP reference points")
      ->check(CLI::IsMember({"prior", "hypercube"}))
      ->capture_default_str();
  l->add_option("--n-summary", lens.n_summary, "sims written to summary.csv")->capture_default_str();
  l->add_option("--out", lens.out, "output directory")->required();
  l->add_flag("--svg", lens.svg, "also write coverage.svg");

  CoverageArgs cov;
  auto* c = app.add_subcommand("coverage", "DRP test on sample files");
  c->add_option("--config", config_path, "key=value file of options; command-line flags win");
  c->add_option("--joint", cov.joint, "sim_id,theta_* file")->required();
  c->add_option("--posterior", cov.posterior, "sim_id,sample_id,theta_* file")->required();
  c->add_option("--obs", cov.obs, "sim_id,x_* file");
  c->add_option("--ref-policy", cov.ref_policy, "hypercube | prior-file:FILE | datashift:k,u")
      ->capture_default_str();
  c->add_option("--metric", cov.metric, "euclidean | weighted:FILE")->capture_default_str();
  c->add_option("--bounds", cov.bounds, "auto | FILE with one lo:hi per dimension")
      ->capture_default_str();
  c->add_option("--seed", cov.seed, "seed for reference points")->capture_default_str();
  c->add_option("--out", cov.out, "output directory")->required();
  c->add_flag("--svg", cov.svg, "also write coverage.svg");

  PlotArgs plot;
  auto* p = app.add_subcommand("plot", "render coverage CSVs to one SVG");
  p->add_option("--in", plot.inputs, "CSV[,CSV...]")->delimiter(',')->required();
  p->add_option("--out", plot.out, "output .svg file")->required();
  p->add_option("--title", plot.title, "plot title");

  std::vector<std::string> args(argv, argv + argc);
  try {
    expand_config(app, args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  std::vector<const char*> expanded;
  for (const auto& a : args) expanded.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(expanded.size()), expanded.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*t) run_toy(toy);
    if (*u) run_uninformative(uni);
    if (*l) run_lensing(lens);
    if (*c) run_coverage(cov);
    if (*p) run_plot(plot);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace drpkit::cli
