#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lfd/stats.hpp"

namespace {

std::vector<std::vector<double>> groups(std::size_t k, std::size_t n) {
  std::mt19937 rng(11);
  std::normal_distribution<double> d(0.8, 0.05);
  std::vector<std::vector<double>> g(k, std::vector<double>(n));
  for (auto& x : g) {
    for (auto& v : x) v = d(rng);
  }
  return g;
}

void BM_Bartlett(benchmark::State& state) {
  const auto g = groups(static_cast<std::size_t>(state.range(0)), 28);
  for (auto _ : state) benchmark::DoNotOptimize(lfd::bartlett(g));
}
BENCHMARK(BM_Bartlett)->Arg(2)->Arg(8);

void BM_Anova(benchmark::State& state) {
  const auto g = groups(static_cast<std::size_t>(state.range(0)), 28);
  for (auto _ : state) benchmark::DoNotOptimize(lfd::anova_oneway(g));
}
BENCHMARK(BM_Anova)->Arg(2)->Arg(8);

void BM_TTest(benchmark::State& state) {
  const auto g = groups(2, 28);
  for (auto _ : state) benchmark::DoNotOptimize(lfd::ttest_two_sample(g[0], g[1]));
}
BENCHMARK(BM_TTest);

}  // namespace

BENCHMARK_MAIN();
