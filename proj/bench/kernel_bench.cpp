#include <benchmark/benchmark.h>

#include <random>

#include "curvlat/bloch.hpp"
#include "curvlat/conformal.hpp"
#include "curvlat/curvature.hpp"
#include "curvlat/generators.hpp"
#include "curvlat/kernels.hpp"
#include "curvlat/lattice_operator.hpp"

using namespace curvlat;

namespace {

LatticeOperator trap_operator(int n) {
  const Grid2D g = Grid2D::centered(n, n, 2.0 / n);
  return assemble_hamiltonian(trap_hopping(ConformalFamily(1.0, 0.25), g, OnsiteMode::exact));
}

std::vector<kernels::cplx> random_state(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  std::vector<kernels::cplx> v(n);
  for (auto& z : v) z = {n01(rng), n01(rng)};
  return v;
}

template <Execution E>
void BM_Apply(benchmark::State& state) {
  const LatticeOperator h = trap_operator(static_cast<int>(state.range(0)));
  const auto in = random_state(h.dimension());
  std::vector<kernels::cplx> out(in.size());
  for (auto _ : state) {
    h.apply(in, out, E);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}

void BM_DotSerial(benchmark::State& state) {
  const auto a = random_state(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::dot(a, a));
}

void BM_DotParallel(benchmark::State& state) {
  const auto a = random_state(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::dot(a, a));
}

template <Execution E>
void BM_Curvature(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiagonalMetric m = family_to_metric(ConformalFamily(2.0, 1.0), Grid2D::centered(n, n, 2.0 / n));
  for (auto _ : state) benchmark::DoNotOptimize(curvature_map(m, E));
}

template <Execution E>
void BM_Bands(benchmark::State& state) {
  const SupercellModel m = dimerized_chain(1.0, 0.8, 1.0);
  const auto momenta = zone_line(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(bloch_bands(m, momenta, E));
}

}  // namespace

BENCHMARK(BM_Apply<Execution::serial>)->Arg(256)->Arg(1024);
BENCHMARK(BM_Apply<Execution::parallel>)->Arg(256)->Arg(1024);
BENCHMARK(BM_DotSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_DotParallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Curvature<Execution::serial>)->Arg(513)->Arg(1025);
BENCHMARK(BM_Curvature<Execution::parallel>)->Arg(513)->Arg(1025);
BENCHMARK(BM_Bands<Execution::serial>)->Arg(20001);
BENCHMARK(BM_Bands<Execution::parallel>)->Arg(20001);

BENCHMARK_MAIN();
