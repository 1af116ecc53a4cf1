#include <benchmark/benchmark.h>

#include <numeric>

#include "preftest/distances.hpp"
#include "preftest/generators.hpp"
#include "preftest/oracle.hpp"
#include "preftest/single_crossing.hpp"
#include "preftest/single_peaked.hpp"
#include "preftest/testers.hpp"

using namespace preftest;

namespace {

Profile sp_profile(int m, std::size_t n) {
  return gen_type1_profile(single_peaked(), m, n, 0.0, 0.0, OutlierMode::RandomOutliers, 7).profile;
}

void BM_RecognizeSP(benchmark::State& state) {
  const auto p = sp_profile(static_cast<int>(state.range(0)), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(recognize_sp(p));
}
BENCHMARK(BM_RecognizeSP)->Arg(5)->Arg(10)->Arg(20);

void BM_RecognizeSC(benchmark::State& state) {
  const auto p =
      gen_type1_profile(single_crossing(), static_cast<int>(state.range(0)), 1000, 0.0, 0.0,
                        OutlierMode::RandomOutliers, 7)
          .profile;
  for (auto _ : state) benchmark::DoNotOptimize(recognize_sc(p));
}
BENCHMARK(BM_RecognizeSC)->Arg(5)->Arg(10)->Arg(20);

void BM_PrefDistance(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto p = gen_type1_profile(single_peaked(), m, 2000, 0.2, 0.0, OutlierMode::RandomOutliers, 3).profile;
  for (auto _ : state) benchmark::DoNotOptimize(pref_distance(p, single_peaked()).value);
}
BENCHMARK(BM_PrefDistance)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_LearnOrder(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto p = gen_uniform_profile(m, 1000, 1).profile;
  QueryOracle oracle(p, 2);
  std::vector<Alternative> subset(static_cast<std::size_t>(m));
  std::iota(subset.begin(), subset.end(), 0);
  std::vector<Alternative> out(subset.size());
  std::vector<Alternative> scratch;
  for (auto _ : state) {
    oracle.learn_restricted_order(oracle.draw_agent(), subset, out, scratch);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LearnOrder)->Arg(3)->Arg(8)->Arg(32);

void BM_Alg1Tester(benchmark::State& state) {
  const auto p = gen_uniform_profile(3, 10000, 1).profile;
  TesterParams params;
  params.eps_v = 0.2;
  params.delta = 0.001;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    QueryOracle oracle(p, ++seed);
    benchmark::DoNotOptimize(test_random_outliers(oracle, single_peaked(), params).decision);
  }
}
BENCHMARK(BM_Alg1Tester)->Unit(benchmark::kMicrosecond);

void BM_AltTester(benchmark::State& state) {
  const auto p = gen_uniform_profile(9, 10000, 1).profile;
  TesterParams params;
  params.eps_a = 0.2;
  params.delta = 0.001;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    QueryOracle oracle(p, ++seed);
    Rng rng(seed);
    benchmark::DoNotOptimize(test_alt_outliers(oracle, single_peaked(), params, rng).decision);
  }
}
BENCHMARK(BM_AltTester)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
