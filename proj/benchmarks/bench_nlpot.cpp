#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "nlpot/charfn.hpp"
#include "nlpot/oracle.hpp"
#include "nlpot/recovery.hpp"
#include "nlpot/spectrum.hpp"

namespace {

using namespace nlpot;

// Normalized potential with every level 0..order active.
OperatorSpec make_operator(int order, double alpha = 1.5) {
  std::vector<FourierTerm> terms;
  for (int k = 1; k <= order; ++k) terms.push_back({k, 1.0 / k, 0.5 / (k + 1)});
  return {alpha, PotentialSpec::build(0.7, terms, true)};
}

void BM_Delta(benchmark::State& state) {
  const CharfnContext ctx(make_operator(static_cast<int>(state.range(0))));
  double lambda = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.delta(Complex(lambda, 0.1)));
    lambda = lambda > 30.0 ? 0.37 : lambda + 0.731;
  }
}
BENCHMARK(BM_Delta)->Arg(1)->Arg(4)->Arg(8)->Arg(16);

void BM_SecularRoots(benchmark::State& state) {
  const WeightTable table = weight_table(make_operator(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(all_secular_roots(table));
}
BENCHMARK(BM_SecularRoots)->Arg(4)->Arg(16)->Arg(64);

void BM_ClassifySpectrum(benchmark::State& state) {
  const OperatorSpec op = make_operator(8);
  const double window = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify_spectrum(op, window));
}
BENCHMARK(BM_ClassifySpectrum)->Arg(400)->Arg(4000);

void BM_JacobiOracle(benchmark::State& state) {
  const OperatorSpec op = make_operator(8);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::oracle_spectrum(op, n));
}
BENCHMARK(BM_JacobiOracle)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_ThreeSpectraRoundTrip(benchmark::State& state) {
  const OperatorSpec op = make_operator(4);
  const ThreeSpectra spectra = forward_three_spectra(op, 4, 32);
  for (auto _ : state) benchmark::DoNotOptimize(invert_three_spectra(spectra));
}
BENCHMARK(BM_ThreeSpectraRoundTrip);

}  // namespace

BENCHMARK_MAIN();
