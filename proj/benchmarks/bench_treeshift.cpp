// Microbenchmarks for the hot paths: spectral analysis, reduction scans, and
// the exact/brute-force counters.  Not wired into ctest; run the binary
// directly (`./treeshift_bench`) when profiling.

#include <benchmark/benchmark.h>

#include "treeshift/realization.hpp"
#include "treeshift/reduction.hpp"
#include "treeshift/snre.hpp"
#include "treeshift/spectral.hpp"

namespace {

using namespace treeshift;

TreeShiftSpec doubling_spec() {
  return parse_spec(R"({"d":2, "alphabet":["a","b"],
    "allowed":[["a",["a","a"]],["a",["b","b"]],["b",["a","b"]],["b",["b","a"]]]})");
}

const IntMatrix kCubic = IntMatrix::from_rows({{1, 1, 0}, {0, 0, 1}, {2, 1, 0}});

void BM_SpectralRadius(benchmark::State& state) {
  const IntMatrix m = extend_matrix(kCubic);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(m));
}
BENCHMARK(BM_SpectralRadius);

void BM_CharPoly(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0));
  IntMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m.at(i, j) = (i * 7 + j * 3) % 3;
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(m));
}
BENCHMARK(BM_CharPoly)->Arg(4)->Arg(16)->Arg(32);

void BM_TsftEntropyDoubling(benchmark::State& state) {
  const Snre snre = build_snre(doubling_spec());
  for (auto _ : state) benchmark::DoNotOptimize(tsft_entropy(snre));
}
BENCHMARK(BM_TsftEntropyDoubling);

void BM_TsftEntropyCubicRealization(benchmark::State& state) {
  const Snre snre = realize_tsft(kCubic).snre;
  for (auto _ : state) benchmark::DoNotOptimize(tsft_entropy(snre));
}
BENCHMARK(BM_TsftEntropyCubicRealization);

void BM_EnumerateReductions(benchmark::State& state) {
  const Snre snre = realize_tsft(kCubic).snre;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_reductions(snre, 1024));
}
BENCHMARK(BM_EnumerateReductions);

void BM_EvaluateExact(benchmark::State& state) {
  const Snre snre = build_snre(doubling_spec());
  const auto levels = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_exact(snre, levels));
}
BENCHMARK(BM_EvaluateExact)->Arg(8)->Arg(12);

void BM_BruteForce(benchmark::State& state) {
  const TreeShiftSpec spec = doubling_spec();
  const auto height = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_count(spec, height));
}
BENCHMARK(BM_BruteForce)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
