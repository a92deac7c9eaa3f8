// Parallel kernels against the serial reference, plus whole V-cycles.
// Arguments are the grid size n.

#include <benchmark/benchmark.h>

#include <random>

#include "dmg/cycle.hpp"
#include "dmg/reference.hpp"
#include "dmg/stencil2d.hpp"
#include "dmg/stencil3d.hpp"

using namespace dmg;

namespace {

Field random_interior(const GridLevel& level, const Hierarchy& h, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(level, h.n());
  for (const Index& idx : interior_nodes(level, h)) f(idx) = dist(rng);
  return f;
}

template <typename Kernel>
void residual_2d(benchmark::State& state, Kernel kernel) {
  const int n = static_cast<int>(state.range(0));
  const Hierarchy h = build_hierarchy(2, n, 1);
  const Field u = random_interior(h.finest(), h, 1), f = random_interior(h.finest(), h, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(u, f, h.h()));
  state.SetItemsProcessed(state.iterations() * h.unknowns());
}

template <typename Kernel>
void residual_3d(benchmark::State& state, Kernel kernel) {
  const int n = static_cast<int>(state.range(0));
  const Hierarchy h = build_hierarchy(3, n, 1);
  const Field u = random_interior(h.finest(), h, 1), f = random_interior(h.finest(), h, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(u, f, h.h()));
  state.SetItemsProcessed(state.iterations() * h.unknowns());
}

void BM_residual4_2d_parallel(benchmark::State& s) {
  residual_2d(s, [](const Field& u, const Field& f, double h) { return stencil2d::residual4(u, f, h); });
}
void BM_residual4_2d_reference(benchmark::State& s) { residual_2d(s, reference::residual4_2d); }
void BM_residual4_3d_parallel(benchmark::State& s) {
  residual_3d(s, [](const Field& u, const Field& f, double h) { return stencil3d::residual4(u, f, h); });
}
void BM_residual4_3d_reference(benchmark::State& s) { residual_3d(s, reference::residual4_3d); }

void restrict_2d(benchmark::State& state, bool parallel) {
  const int n = static_cast<int>(state.range(0));
  const Hierarchy h = build_hierarchy(2, n, 1);
  const GridLevel& fine = h.level(2);
  const GridLevel& diag = h.level(1);
  const Field r = random_interior(fine, h, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? stencil2d::restrict_axis_to_diag(r, diag)
                                      : reference::restrict_axis_to_diag(r, diag));
  }
}
void BM_restrict_2d_parallel(benchmark::State& s) { restrict_2d(s, true); }
void BM_restrict_2d_reference(benchmark::State& s) { restrict_2d(s, false); }

void prolong_3d(benchmark::State& state, bool parallel) {
  const int n = static_cast<int>(state.range(0));
  const Hierarchy h = build_hierarchy(3, n, 1);
  const GridLevel& green = h.level(3);
  const GridLevel& red = h.level(2);
  const Field v = random_interior(red, h, 4), r = random_interior(green, h, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? stencil3d::prolong_red_green(v, r, 1.1, h.h())
                                      : reference::prolong_red_green(v, r, 1.1, h.h()));
  }
}
void BM_prolong_3d_parallel(benchmark::State& s) { prolong_3d(s, true); }
void BM_prolong_3d_reference(benchmark::State& s) { prolong_3d(s, false); }

void v_cycle_bench(benchmark::State& state, int dim, Scheme scheme) {
  const int n = static_cast<int>(state.range(0));
  const Hierarchy h = build_hierarchy(dim, n, max_doublings(n), scheme);
  CycleParams p;
  p.dim = dim;
  p.scheme = scheme;
  const VCycle cycle(h, p);
  const Field rhs = cycle.prepare_rhs(random_interior(h.finest(), h, 6));
  Field u = cycle.make_field();
  FlopLedger ledger;
  for (auto _ : state) u = cycle.apply(u, rhs, ledger);
  state.counters["flops/N"] = double(ledger.comparable()) / double(state.iterations()) / double(h.unknowns());
  state.SetItemsProcessed(state.iterations() * h.unknowns());
}
void BM_vcycle_2d_diagonal(benchmark::State& s) { v_cycle_bench(s, 2, Scheme::Diagonal); }
void BM_vcycle_2d_usual(benchmark::State& s) { v_cycle_bench(s, 2, Scheme::Conventional); }
void BM_vcycle_3d_diagonal(benchmark::State& s) { v_cycle_bench(s, 3, Scheme::Diagonal); }
void BM_vcycle_3d_usual(benchmark::State& s) { v_cycle_bench(s, 3, Scheme::Conventional); }

}  // namespace

BENCHMARK(BM_residual4_2d_parallel)->Arg(257)->Arg(1025);
BENCHMARK(BM_residual4_2d_reference)->Arg(257)->Arg(1025);
BENCHMARK(BM_residual4_3d_parallel)->Arg(33)->Arg(65);
BENCHMARK(BM_residual4_3d_reference)->Arg(33)->Arg(65);
BENCHMARK(BM_restrict_2d_parallel)->Arg(257)->Arg(1025);
BENCHMARK(BM_restrict_2d_reference)->Arg(257)->Arg(1025);
BENCHMARK(BM_prolong_3d_parallel)->Arg(33)->Arg(65);
BENCHMARK(BM_prolong_3d_reference)->Arg(33)->Arg(65);
BENCHMARK(BM_vcycle_2d_diagonal)->Arg(257)->Arg(1025);
BENCHMARK(BM_vcycle_2d_usual)->Arg(257)->Arg(1025);
BENCHMARK(BM_vcycle_3d_diagonal)->Arg(33)->Arg(65);
BENCHMARK(BM_vcycle_3d_usual)->Arg(33)->Arg(65);

BENCHMARK_MAIN();
