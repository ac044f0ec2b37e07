#include <benchmark/benchmark.h>

#include "expflow/diophantine.hpp"
#include "expflow/line_flows.hpp"
#include "expflow/matrix_exp.hpp"
#include "expflow/multiplier.hpp"
#include "expflow/random.hpp"
#include "expflow/real_jordan.hpp"

namespace {

using namespace expflow;

void BM_ApplyAlphaChi(benchmark::State& state) {
  Rng rng(1);
  const int band = static_cast<int>(state.range(0));
  const auto spec = random_spectrum(rng, 2, band);
  const torus::TorusFlow flow({parse_real_parameter("sqrt2"), parse_real_parameter("sqrt3")});
  const auto ell = parse_real_parameter("phi");
  for (auto _ : state) benchmark::DoNotOptimize(torus::apply_alpha_chi(spec, ell, flow));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.size()));
}
BENCHMARK(BM_ApplyAlphaChi)->Arg(8)->Arg(32);

void BM_CfExpand(benchmark::State& state) {
  const auto x = parse_real_parameter("sqrt2");
  for (auto _ : state) benchmark::DoNotOptimize(diophantine::cf_expand(x, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_CfExpand)->Arg(50)->Arg(200);

void BM_RealJordan(benchmark::State& state) {
  Rng rng(2);
  const Matrix a = random_separated_matrix(rng, static_cast<int>(state.range(0)), 0.5, true);
  for (auto _ : state) benchmark::DoNotOptimize(real_jordan_spectral(a));
}
BENCHMARK(BM_RealJordan)->Arg(4)->Arg(6);

void BM_MatrixExp(benchmark::State& state) {
  Rng rng(3);
  const Matrix a = random_separated_matrix(rng, static_cast<int>(state.range(0)), 0.5, false);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exp(a, 1.0));
}
BENCHMARK(BM_MatrixExp)->Arg(4)->Arg(16);

void BM_BetaLine(benchmark::State& state) {
  Rng rng(4);
  const Bump b = random_bump(rng);
  const double h = 1.0 / static_cast<double>(state.range(0));
  const auto f = GridFunction::sample(-3.0, 3.0, h, b, SupportInterval{b.lo(), b.hi()});
  for (auto _ : state) benchmark::DoNotOptimize(line::beta_s_line(f, 1.0));
}
BENCHMARK(BM_BetaLine)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
