#include <benchmark/benchmark.h>

#include <memory>

#include "drpkit/coverage/engine.hpp"
#include "drpkit/coverage/ranks.hpp"
#include "drpkit/gaussian/toy.hpp"
#include "drpkit/lensing/model.hpp"
#include "drpkit/lensing/sde.hpp"

using namespace drpkit;

static void BM_DrpRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 10;
  coverage::SeededRng rng(1, 1);
  coverage::DenseMatrix samples(n, dim);
  for (double& v : samples.data()) v = rng.uniform();
  coverage::Vector truth(dim), ref(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    truth[d] = rng.uniform();
    ref[d] = rng.uniform();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(coverage::drp_rank(samples, truth, ref, coverage::Euclidean{}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_DrpRank)->Arg(500)->Arg(5000);

static void BM_ToyDrpTest(benchmark::State& state) {
  gaussian::ToyConfig cfg;
  cfg.dim = static_cast<std::size_t>(state.range(0));
  const auto bench = gaussian::generate_toy(cfg, 0);
  coverage::DrpOptions o;
  o.bounds = bench.bounds();
  for (auto _ : state) {
    benchmark::DoNotOptimize(coverage::drp_test(bench.dataset, bench.sampler, o));
  }
}
BENCHMARK(BM_ToyDrpTest)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ToyHpdTest(benchmark::State& state) {
  gaussian::ToyConfig cfg;
  const auto bench = gaussian::generate_toy(cfg, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coverage::hpd_test(bench.dataset, bench.sampler, {}));
  }
}
BENCHMARK(BM_ToyHpdTest)->Unit(benchmark::kMillisecond);

static void BM_RsdeSample(benchmark::State& state) {
  auto model = std::make_shared<const lensing::LensingModel>(lensing::LensingModel::build({}));
  const lensing::RsdeSampler sampler(model, lensing::VeSchedule{}, lensing::ScoreKind::Exact);
  coverage::SeededRng rng(2, 2);
  const auto x = lensing::simulate(*model, rng).x;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample(x, n, rng));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RsdeSample)->Arg(1)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_ScorePlan(benchmark::State& state) {
  const auto model = lensing::LensingModel::build({});
  for (auto _ : state) {
    benchmark::DoNotOptimize(lensing::ScorePlan(model, lensing::VeSchedule{}, lensing::ScoreKind::Exact));
  }
}
BENCHMARK(BM_ScorePlan)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
