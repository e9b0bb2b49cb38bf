#include <random>

#include <benchmark/benchmark.h>

#include "iso/calibration.hpp"
#include "iso/conditions.hpp"
#include "iso/expm.hpp"
#include "iso/flow.hpp"
#include "iso/normalform.hpp"
#include "iso/solver.hpp"

using namespace iso;

namespace {

JetSeries sample(int truncation) {
  std::mt19937_64 rng(3);
  return random_real_hamiltonian(rng, truncation);
}

void BM_PoissonBracket(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const JetSeries h = sample(n);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_bracket(h, h.degree_range(3, n)));
}
BENCHMARK(BM_PoissonBracket)->Arg(8)->Arg(12)->Arg(16);

void BM_SigmaTable(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const JetSeries h = sample(2 * d + 2);
  for (auto _ : state) benchmark::DoNotOptimize(sigma_table(h, d));
}
BENCHMARK(BM_SigmaTable)->Arg(2)->Arg(4)->Arg(6);

void BM_NormalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const JetSeries h = sample(n);
  for (auto _ : state) benchmark::DoNotOptimize(birkhoff_normal_form(h, n));
}
BENCHMARK(BM_NormalForm)->Arg(6)->Arg(10)->Arg(14);

void BM_JetTimeOneMap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  const JetSeries h = make_isochronous_pullback(random_real_generator(rng, n + 1, 3), n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(jet_time_one_map(h, n));
}
BENCHMARK(BM_JetTimeOneMap)->Arg(6)->Arg(10)->Arg(14);

void BM_SolveExample1(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_example1(GaussianRational(1), GaussianRational(0), d, ConditionConvention::calibrated()));
  }
}
BENCHMARK(BM_SolveExample1)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ReturnTime(benchmark::State& state) {
  JetSeries h = harmonic_hamiltonian(4);
  h.set({2, 2}, 1);
  const auto numeric = NumericHamiltonian::from_jet(h);
  for (auto _ : state) benchmark::DoNotOptimize(return_time(numeric, 0.1, 1e-10));
}
BENCHMARK(BM_ReturnTime);

}  // namespace

BENCHMARK_MAIN();
