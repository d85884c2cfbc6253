#include <benchmark/benchmark.h>

#include <random>

#include "bci/cause_model.hpp"
#include "bci/covariance.hpp"
#include "bci/effect_model.hpp"
#include "bci/forward_model.hpp"
#include "bci/inference.hpp"

namespace {

void BM_BuildGridCovariance(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const bci::PowerSpectrum spec(1000.0, 4.0);
  const bci::GridConfig grid(m);
  for (auto _ : state) {
    auto cov = bci::build_grid_covariance(spec, grid);
    benchmark::DoNotOptimize(cov.log_det());
  }
}
BENCHMARK(BM_BuildGridCovariance)->Arg(64)->Arg(256)->Arg(512);

void BM_MinimizeBeta(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const bci::CauseModel model(bci::build_grid_covariance(
      bci::PowerSpectrum(1000.0, 4.0), bci::GridConfig(m)));
  std::mt19937_64 engine(1);
  std::poisson_distribution<int> poisson(300.0 / m);
  Eigen::VectorXi k(m);
  for (int j = 0; j < m; ++j) k[j] = poisson(engine);
  const bci::BinCounts counts{k};
  for (auto _ : state) {
    auto result = model.minimize_beta(counts);
    benchmark::DoNotOptimize(result.gradient_norm);
  }
}
BENCHMARK(BM_MinimizeBeta)->Arg(64)->Arg(256)->Arg(512);

void BM_EffectHamiltonian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bci::EffectModelConfig cfg;
  cfg.kernel_modes = 512;
  std::mt19937_64 engine(2);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = uniform(engine);
    y[i] = uniform(engine);
  }
  for (auto _ : state) {
    auto like = bci::effect_hamiltonian(x, y, cfg);
    benchmark::DoNotOptimize(like.total);
  }
}
BENCHMARK(BM_EffectHamiltonian)->Arg(100)->Arg(300)->Arg(500);

void BM_InferDirection(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  bci::InferenceConfig cfg;
  cfg.grid = bci::GridConfig(m);
  const bci::InferenceEngine engine(cfg);

  bci::ForwardConfig fwd;
  fwd.n_bins = m;
  fwd.target_samples = 300;
  fwd.seed = 3;
  const bci::LabeledPair pair = bci::sample_pair(fwd);
  for (auto _ : state) {
    auto result = engine.infer(pair.x, pair.y);
    benchmark::DoNotOptimize(result.log_odds);
  }
}
BENCHMARK(BM_InferDirection)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
