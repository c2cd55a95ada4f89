#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "gfc/gen_series.hpp"
#include "gfc/oracle.hpp"
#include "gfc/parallel.hpp"

using namespace gfc;
using kernels::cplx;

namespace {

struct Lattice {
  std::vector<std::int64_t> keys;
  std::vector<cplx> coeffs;
  std::vector<double> mags;

  kernels::LatticeTerms view() const { return {keys, coeffs, mags}; }
};

Lattice dense_lattice(std::int64_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Lattice l;
  for (std::int64_t k = 1; k <= n; ++k) {
    l.keys.push_back(k);
    l.coeffs.emplace_back(u(rng), u(rng));
    l.mags.push_back(std::abs(l.coeffs.back()));
  }
  return l;
}

template <class Kernel>
void run_convolve(benchmark::State& state, Kernel kernel) {
  const std::int64_t n = state.range(0);
  const Lattice a = dense_lattice(n, 1);
  const Lattice b = dense_lattice(n, 2);
  const std::vector<double> weights(static_cast<std::size_t>(2 * n), 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel(a.view(), b.view(), 2 * n, weights));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_ConvolveSerial(benchmark::State& state) {
  run_convolve(state, kernels::convolve_serial);
}
void BM_ConvolveParallel(benchmark::State& state) {
  run_convolve(state, kernels::convolve_parallel);
}

kernels::AtomTable atom_table(int n) {
  kernels::AtomTable t;
  for (int k = 1; k <= n; ++k) {
    const double mu = 0.25 * k;
    t.mu.push_back(mu);
    t.coeffs.emplace_back(1.0 / k, -0.5 / k);
    t.log_gamma.push_back(std::lgamma(mu));
  }
  return t;
}

template <class Kernel>
void run_evaluate(benchmark::State& state, Kernel kernel) {
  const kernels::AtomTable atoms = atom_table(240);
  std::vector<double> ts(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = 2.0 * (i + 1) / ts.size();
  for (auto _ : state) benchmark::DoNotOptimize(kernel(atoms, ts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluateSerial(benchmark::State& state) { run_evaluate(state, kernels::evaluate_serial); }
void BM_EvaluateParallel(benchmark::State& state) {
  run_evaluate(state, kernels::evaluate_parallel);
}

template <class Kernel>
void run_grid(benchmark::State& state, Kernel kernel) {
  const int n = static_cast<int>(state.range(0));
  const GenSeries f = make_series({{Exponent(1, 2), 1.0}, {Exponent(3, 2), 0.5}});
  const GenSeries g = make_series({{Exponent(1, 3), 1.0}, {Exponent(7, 3), -0.25}});
  const auto sf = oracle::sample(f, 2.0, n);
  const auto sg = oracle::sample(g, 2.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(sf, sg));
}

void BM_GridSerial(benchmark::State& state) { run_grid(state, oracle::grid_convolve_serial); }
void BM_GridParallel(benchmark::State& state) { run_grid(state, oracle::grid_convolve); }

}  // namespace

BENCHMARK(BM_ConvolveSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_ConvolveParallel)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_EvaluateSerial)->RangeMultiplier(8)->Range(64, 32768);
BENCHMARK(BM_EvaluateParallel)->RangeMultiplier(8)->Range(64, 32768);
BENCHMARK(BM_GridSerial)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK(BM_GridParallel)->RangeMultiplier(2)->Range(256, 2048);

BENCHMARK_MAIN();
