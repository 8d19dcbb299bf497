#include <benchmark/benchmark.h>

#include "satlab/satlab.hpp"

namespace {

using namespace satlab;

void BM_TruthTable(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const Formula f = random_formula(n, 200, 1);
  for (auto _ : state) benchmark::DoNotOptimize(truth_table(f).ones_count);
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_TruthTable)->Arg(10)->Arg(16)->Arg(20);

void BM_ScalarEval(benchmark::State& state) {
  const Formula f = random_formula(16, 200, 1);
  std::uint64_t v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval(f, Assignment(v, 16)));
    v = (v + 1) & 0xffff;
  }
}
BENCHMARK(BM_ScalarEval);

void BM_Unrank(benchmark::State& state) {
  const auto length = static_cast<std::uint64_t>(state.range(0));
  const BigInt count = binomial(length, length / 2);
  const BigInt index = count / 3;
  for (auto _ : state) benchmark::DoNotOptimize(unrank_k_ones(length, length / 2, index));
}
BENCHMARK(BM_Unrank)->Arg(60)->Arg(200)->Arg(1000);

void BM_Compress(benchmark::State& state) {
  Rng rng(3);
  const BitString bits = sample_bernoulli_bits(1 << 18, 0.1, rng);
  const auto names = compressor_names();
  const auto c = make_compressor(names.at(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(c->compress(bits).size());
  state.SetLabel(std::string(c->name()));
  state.SetBytesProcessed(state.iterations() * (1 << 15));
}
BENCHMARK(BM_Compress)->DenseRange(0, 2);

void BM_PackingCount(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(packing_count(0.1, 0.9, m));
}
BENCHMARK(BM_PackingCount)->Arg(10000)->Arg(1000000)->Arg(100000000);

void BM_CurveDistance(benchmark::State& state) {
  const auto c = ParamCurve::make([](double t) { return std::cos(t) * std::cos(t); }, 0.2, 1.2,
                                  [](double t) { return -std::sin(2 * t); });
  for (auto _ : state) benchmark::DoNotOptimize(curve_distance(c));
}
BENCHMARK(BM_CurveDistance);

void BM_SequentialDistinguish(benchmark::State& state) {
  const auto a = EnsembleSpec::oracle(0.0);
  const auto b = EnsembleSpec::oracle(1.0 / 256);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sequential_distinguish(a, b, {1 << 14, 8, seed++}).trials_used);
}
BENCHMARK(BM_SequentialDistinguish);

}  // namespace
BENCHMARK_MAIN();
