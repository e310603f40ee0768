#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "charsum/arith.hpp"
#include "charsum/character_sums.hpp"
#include "charsum/polya.hpp"
#include "charsum/verify.hpp"

using namespace charsum;

static void BM_Kronecker(benchmark::State& state) {
  std::int64_t acc = 0;
  for (auto _ : state) {
    for (std::int64_t n = 1; n <= 1000; ++n) acc += arith::kronecker(-100003, n);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Kronecker);

static void BM_CharValues(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const arith::PrimeSieve sieve(q + 1);
  std::vector<std::int8_t> out(q);
  for (auto _ : state) {
    sums::fill_char_values(-static_cast<std::int64_t>(q), sieve, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(q));
}
BENCHMARK(BM_CharValues)->Arg(10007)->Arg(1000003);

static void BM_MaxPartialSum(benchmark::State& state) {
  const arith::FundamentalDiscriminant d(-static_cast<std::int64_t>(state.range(0)));
  const arith::PrimeSieve sieve(static_cast<std::uint64_t>(state.range(0)) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(sums::max_partial_sum(d, sieve));
}
BENCHMARK(BM_MaxPartialSum)->Arg(10007)->Arg(1000003);

static void BM_SyzMax(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0));
  const arith::SmoothnessSieve sieve(static_cast<std::uint32_t>(z));
  for (auto _ : state) benchmark::DoNotOptimize(polya::s_yz_max(-163, std::exp(4.0), z, sieve));
}
BENCHMARK(BM_SyzMax)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_SmallScan(benchmark::State& state) {
  Config cfg;
  cfg.x = static_cast<std::uint64_t>(state.range(0));
  cfg.threads = 1;
  const verify::Harness h(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(h.scan());
}
BENCHMARK(BM_SmallScan)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
