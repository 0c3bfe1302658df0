#include <numbers>

#include <benchmark/benchmark.h>

#include "bgctl/legendre.hpp"
#include "bgctl/mass_bounds.hpp"
#include "bgctl/moments.hpp"
#include "bgctl/spectral.hpp"

using namespace bgctl;
constexpr double kPi = std::numbers::pi;

static void BM_EigenfunctionColumn(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(eigenfunction_column(n, n + 60, 0.7));
}
BENCHMARK(BM_EigenfunctionColumn)->Arg(1)->Arg(10)->Arg(40);

static void BM_Biorthogonal(benchmark::State& st) {
  const auto fam = ExponentialFamily::for_mode(1, static_cast<int>(st.range(0)), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(biorthogonal(fam));
}
BENCHMARK(BM_Biorthogonal)->Arg(6)->Arg(10)->Arg(14);

static void BM_CrownMassMatrix(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto crown = Crown::make(kPi / 3, kPi / 2);
  for (auto _ : st) benchmark::DoNotOptimize(crown_mass_matrix(n, n + 40, crown));
}
BENCHMARK(BM_CrownMassMatrix)->Arg(1)->Arg(12);

static void BM_MassRowsExtended(benchmark::State& st) {
  const auto region = Region::from_crown(Crown::make(kPi / 3, 1.3));
  for (auto _ : st) benchmark::DoNotOptimize(region_mass_rows_ext(2, 2 + 500, region, 12));
}
BENCHMARK(BM_MassRowsExtended)->Unit(benchmark::kMillisecond);

static void BM_Synthesize(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  const auto f0 = SpectralField::single_mode(3, 3, N);
  const auto crown = Crown::make(kPi / 3, kPi / 2);
  for (auto _ : st) benchmark::DoNotOptimize(synthesize(f0, crown, 1.0, N));
}
BENCHMARK(BM_Synthesize)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_DuhamelTrajectory(benchmark::State& st) {
  const int K = static_cast<int>(st.range(0));
  const auto f0 = SpectralField::single_mode(1, 1, K);
  const auto plan = synthesize(f0, Crown::make(kPi / 3, kPi / 2), 1.0, 8);
  std::vector<double> times;
  for (int i = 0; i <= 200; ++i) times.push_back(i / 200.0);
  for (auto _ : st) benchmark::DoNotOptimize(duhamel_trajectory(f0, plan, times));
}
BENCHMARK(BM_DuhamelTrajectory)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_CombinatorialSuite(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(combinatorial_suite(10, 12));
}
BENCHMARK(BM_CombinatorialSuite)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
