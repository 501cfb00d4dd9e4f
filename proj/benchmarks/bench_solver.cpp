#include <benchmark/benchmark.h>

#include "poreflow/caseio.hpp"
#include "poreflow/radial.hpp"

namespace {

using namespace poreflow;

Problem cylinder_problem(int n_r, int n_z) {
  CaseSpec spec;
  spec.base = load_preset("cylinder");
  CaseOverrides ov;
  ov.dphi = -8.0;
  ov.nr = n_r;
  ov.nz = n_z;
  apply_overrides(spec, ov);
  return make_problem(spec);
}

void bm_radial_solve(benchmark::State& state) {
  const int n_r = static_cast<int>(state.range(0));
  auto grid = RadialGrid::uniform(5.0, n_r);
  MixtureSpec mix;
  mix.species = {{"cation", 1.0, 1.33, 0.0, 0.0}, {"anion", -1.0, 0.79, 0.0, 0.0}};
  SolverConfig cfg;
  std::vector<double> Q = {0.6, 0.6};
  for (auto _ : state) {
    auto sol = solve_radial(Q, 0.15, 0.4, 9.23, grid, mix, cfg);
    benchmark::DoNotOptimize(sol.phi_r.data());
  }
}
BENCHMARK(bm_radial_solve)->Arg(100)->Arg(200)->Arg(400);

void bm_solve_steady(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto prob = cylinder_problem(n, n);
  for (auto _ : state) {
    auto sol = solve_steady(prob);
    benchmark::DoNotOptimize(sol.iterations);
  }
}
BENCHMARK(bm_solve_steady)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void bm_y0_root(benchmark::State& state) {
  MixtureSpec mix;
  mix.variant = Variant::mixture;
  mix.v0 = 0.018;
  mix.species = {{"cation", 1.0, 1.334, 4.15, 4.15 * 0.018},
                 {"anion", -1.0, 2.032, 4.15, 4.15 * 0.018}};
  std::vector<double> Q = {0.02, 0.02};
  double phi = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_y0(Q, phi, mix));
    phi = -phi;
  }
}
BENCHMARK(bm_y0_root);

}  // namespace

BENCHMARK_MAIN();
