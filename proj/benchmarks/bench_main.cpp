#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hetstab/findex.hpp"
#include "hetstab/oracle.hpp"
#include "hetstab/rsp.hpp"
#include "hetstab/stability.hpp"

namespace {

std::vector<hetstab::AlphaVector> alpha_pool(std::size_t n, std::size_t len) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<hetstab::AlphaVector> pool;
  pool.reserve(n);
  while (pool.size() < n) {
    std::vector<double> a(len);
    for (auto& x : a) x = u(rng);
    pool.emplace_back(a);
  }
  return pool;
}

void BM_FIndex(benchmark::State& state) {
  const auto pool = alpha_pool(1024, static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hetstab::f_index(pool[i++ & 1023]));
  }
}
BENCHMARK(BM_FIndex)->Arg(3)->Arg(6)->Arg(12);

void BM_FIndexN3(benchmark::State& state) {
  const auto pool = alpha_pool(1024, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = pool[i++ & 1023];
    benchmark::DoNotOptimize(hetstab::f_index_n3(a[0], a[1], a[2]));
  }
}
BENCHMARK(BM_FIndexN3);

void BM_ClassifyRsp(benchmark::State& state) {
  const auto cycle = hetstab::rsp_matrix_cycle({-0.5, 0.2});
  for (auto _ : state) benchmark::DoNotOptimize(hetstab::classify(cycle));
}
BENCHMARK(BM_ClassifyRsp);

void BM_RspSweep(benchmark::State& state) {
  const auto grid = hetstab::rsp_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const auto& p : grid) benchmark::DoNotOptimize(hetstab::rsp_compare(p));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_RspSweep)->Arg(5)->Arg(21);

void BM_SigmaOracleSmall(benchmark::State& state) {
  const auto cycle = hetstab::rsp_matrix_cycle({-0.5, 0.2});
  hetstab::EstimatorConfig cfg;
  cfg.epsilon_ladder = hetstab::log_ladder(1e-8, 1e-12, 3);
  cfg.samples_per_level = 2048;
  cfg.seed = 3;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(hetstab::estimate_sigma_mc(cycle, 0, cfg));
  state.SetItemsProcessed(state.iterations() * 3 * 2048);
}
BENCHMARK(BM_SigmaOracleSmall)->Unit(benchmark::kMillisecond);

void BM_FPlusOracleSmall(benchmark::State& state) {
  const std::vector<double> ladder{-2, -4, -6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(hetstab::estimate_fplus_mc({-0.25, 1, 0}, ladder, 10000, 5, 1));
  }
}
BENCHMARK(BM_FPlusOracleSmall)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
