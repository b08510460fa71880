#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "qpic/common.hpp"
#include "qpic/faddeeva.hpp"
#include "qpic/functional.hpp"
#include "qpic/grid.hpp"
#include "qpic/kernels.hpp"
#include "qpic/propagation.hpp"
#include "qpic/states.hpp"
#include "qpic/volterra.hpp"

using qpic::cplx;

namespace {

const qpic::PhysicsParams kP{-0.25, 1.0};

void BM_faddeeva(benchmark::State& state) {
  cplx z(1.7, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpic::faddeeva_w(z));
    z += cplx(1e-9, 1e-9);  // defeat value caching
  }
}
BENCHMARK(BM_faddeeva);

void BM_kernel_G(benchmark::State& state) {
  double t = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpic::kernel_G(t, kP));
    t += 1e-9;
  }
}
BENCHMARK(BM_kernel_G);

void BM_free_prop_origin(benchmark::State& state) {
  const auto s = qpic::make_initial_state(1.0, 2.0, kP);
  double t = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpic::free_prop_origin(s, t));
    t += 1e-9;
  }
}
BENCHMARK(BM_free_prop_origin)->Unit(benchmark::kMicrosecond);

void BM_abel_weights(benchmark::State& state) {
  const qpic::TimeGrid g{1.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    qpic::AbelWeights aw(g);
    benchmark::DoNotOptimize(aw.c1.data());
  }
}
BENCHMARK(BM_abel_weights)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_solve_charge(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qpic::TimeGrid g{1.0, n};
  const qpic::AbelWeights aw(g);
  const auto greg = [](double s) { return qpic::bound_trace_reg(s, kP); };
  const auto src = qpic::abel_source_singular(g, greg);
  const std::vector<double> pot(g.size(), kP.alpha_bar);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpic::solve_charge(aw, g, src, pot));
  }
}
BENCHMARK(BM_solve_charge)
    ->Arg(256)
    ->Arg(1024)
    ->Arg(4096)
    ->Unit(benchmark::kMillisecond);

void BM_jacobian_column(benchmark::State& state) {
  const auto s = qpic::make_initial_state(1.0, 2.0, kP);
  const qpic::FunctionalContext ctx(kP, s, qpic::TimeGrid{1.0, 512});
  const qpic::ControlProfile alpha(1.0, {0.01, -0.02});
  const auto v = qpic::evaluate_V(ctx, alpha);
  const auto u = qpic::basis_on_grid(ctx.grid, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpic::gateaux_dF(ctx, alpha, v, u));
  }
}
BENCHMARK(BM_jacobian_column)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
