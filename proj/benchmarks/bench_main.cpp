#include <benchmark/benchmark.h>

#include <random>

#include "cbd/decide.hpp"
#include "cbd/vspace.hpp"

namespace {

cbd::Pmf random_pmf(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<long> weight(0, 6);
  std::vector<long> w(k);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) total += x = weight(rng);
  }
  cbd::Pmf p;
  for (auto x : w) p.push_back(cbd::ratio(x, total));
  return p;
}

std::vector<cbd::Pmf> connection(std::size_t n, std::size_t k) {
  std::mt19937_64 rng(n * 100 + k);
  std::vector<cbd::Pmf> pmfs;
  for (std::size_t i = 0; i < n; ++i) pmfs.push_back(random_pmf(rng, k));
  return pmfs;
}

// single categorical connection, full dichotomization plan
void BM_DecideCategorical(benchmark::State& state) {
  const auto pmfs = connection(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto system = cbd::single_connection_system(pmfs, cbd::ValueKind::categorical);
  const auto plan = cbd::plan_full_categorical(system);
  for (auto _ : state) benchmark::DoNotOptimize(cbd::decide_contextuality(system, plan));
}
BENCHMARK(BM_DecideCategorical)->Args({2, 4})->Args({3, 4})->Args({3, 5})->Args({4, 4});

void BM_DecideOrderedCuts(benchmark::State& state) {
  const auto pmfs = connection(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto system = cbd::single_connection_system(pmfs, cbd::ValueKind::ordered);
  const auto plan = cbd::plan_cuts(system);
  for (auto _ : state) benchmark::DoNotOptimize(cbd::decide_contextuality(system, plan));
}
BENCHMARK(BM_DecideOrderedCuts)->Args({3, 5})->Args({4, 5});

void BM_LinkedFamilyOrdered(benchmark::State& state) {
  const auto space = cbd::VSpace::ordered(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cbd::vlinked_family(space));
}
BENCHMARK(BM_LinkedFamilyOrdered)->DenseRange(4, 12, 4);

void BM_AllowableCategorical(benchmark::State& state) {
  const auto space = cbd::VSpace::categorical(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cbd::allowable_dichotomizations(space));
}
BENCHMARK(BM_AllowableCategorical)->DenseRange(4, 12, 4);

void BM_QuantileCoupling(benchmark::State& state) {
  std::vector<cbd::CdfTable> cdfs;
  for (const auto& p : connection(static_cast<std::size_t>(state.range(0)), 8)) cdfs.push_back(cbd::CdfTable::from_pmf(p));
  for (auto _ : state) benchmark::DoNotOptimize(cbd::quantile_coupling(cdfs));
}
BENCHMARK(BM_QuantileCoupling)->RangeMultiplier(4)->Range(2, 64);

void BM_Staircase(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<cbd::Rational> ps;
  for (long i = 0; i < state.range(0); ++i) ps.push_back(random_pmf(rng, 2)[1]);
  for (auto _ : state) benchmark::DoNotOptimize(cbd::multimaximal_binary(ps));
}
BENCHMARK(BM_Staircase)->RangeMultiplier(4)->Range(2, 256);

}  // namespace
BENCHMARK_MAIN();
