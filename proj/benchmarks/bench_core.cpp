#include <benchmark/benchmark.h>

#include <vector>

#include "qbat/dissipation.hpp"
#include "qbat/evolve.hpp"
#include "qbat/lattice.hpp"
#include "qbat/rng.hpp"
#include "qbat/workmetrics.hpp"

using namespace qbat;

namespace {

struct ChainModel {
  HermitianOperator h;
  std::vector<JumpOperator> jumps;
};

ChainModel chain_model(int sites, double gamma_d = 0.0) {
  LatticeSpec spec;
  spec.sites = sites;
  auto [h, bonds] = build_chain(spec);
  std::vector<JumpOperator> jumps;
  for (const Bond& b : bonds) jumps.push_back(bond_jump(b.i, b.j, 0.0, sites));
  if (gamma_d > 0)
    for (int s = 0; s < sites; ++s) jumps.push_back(dephasing_jump(s, sites).with_rate(gamma_d));
  return {std::move(h), std::move(jumps)};
}

DensityMatrix random_state(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Matrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return {rho};
}

void BM_rhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainModel model = chain_model(n);
  const DensityMatrix rho = random_state(n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(rhs(rho.mat, model.h, model.jumps));
}
BENCHMARK(BM_rhs)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_rhs_with_dephasing(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainModel model = chain_model(n, 0.3);
  const DensityMatrix rho = random_state(n, 12);
  for (auto _ : state) benchmark::DoNotOptimize(rhs(rho.mat, model.h, model.jumps));
}
BENCHMARK(BM_rhs_with_dephasing)->Arg(16)->Arg(64);

void BM_build_liouvillian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainModel model = chain_model(n);
  for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(model.h, model.jumps));
}
BENCHMARK(BM_build_liouvillian)->Arg(8)->Arg(16);

void BM_build_liouvillian_sparse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainModel model = chain_model(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_liouvillian_sparse(model.h, model.jumps));
}
BENCHMARK(BM_build_liouvillian_sparse)->Arg(16)->Arg(64);

void BM_steady_state(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainModel model = chain_model(n);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(model.h, model.jumps));
}
BENCHMARK(BM_steady_state)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_steady_state_relaxation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainModel model = chain_model(n);
  const DensityMatrix rho0 = DensityMatrix::maximally_mixed(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(steady_state_relaxation(model.h, model.jumps, rho0));
}
BENCHMARK(BM_steady_state_relaxation)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_evolve_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainModel model = chain_model(n);
  const SpectralDecomposition dec = eig(model.h);
  const DensityMatrix rho0 = DensityMatrix::pure(dec.states.col(0));
  const std::vector<double> grid{0.0, 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve(rho0, model.h, model.jumps, grid));
}
BENCHMARK(BM_evolve_step)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ergotropy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainModel model = chain_model(n);
  const SpectralDecomposition dec = eig(model.h);
  const DensityMatrix rho = random_state(n, 13);
  for (auto _ : state) benchmark::DoNotOptimize(ergotropy(rho, dec));
}
BENCHMARK(BM_ergotropy)->Arg(16)->Arg(64);

void BM_passive_state(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainModel model = chain_model(n);
  const SpectralDecomposition dec = eig(model.h);
  const DensityMatrix rho = random_state(n, 14);
  for (auto _ : state) benchmark::DoNotOptimize(passive_state(rho, dec));
}
BENCHMARK(BM_passive_state)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
