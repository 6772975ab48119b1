#include <benchmark/benchmark.h>

#include "fpe/evolution.hpp"
#include "fpe/shear.hpp"
#include "fpe/spectral.hpp"
#include "fpe/vertical.hpp"

using namespace fpe;

namespace {

GridSpec make_grid(int nx, int nz) {
    GridSpec g;
    g.nx = nx;
    g.nz = nz;
    g.alpha = 1.5;
    g.nu_h = 0.05;
    return g;
}

SpectralField random_state(const GridSpec& g) {
    RunConfig cfg;
    cfg.grid = g;
    cfg.initial.kind = InitialData::Kind::Random;
    cfg.initial.seed = 1;
    cfg.initial.max_k = 8;
    return initial_state(cfg);
}

void BM_Transforms(benchmark::State& state) {
    const auto g = make_grid(static_cast<int>(state.range(0)), 129);
    const Field f = x_inverse(random_state(g));
    for (auto _ : state) benchmark::DoNotOptimize(x_inverse(x_forward(f)));
}
BENCHMARK(BM_Transforms)->Arg(64)->Arg(256);

void BM_DiagnoseW(benchmark::State& state) {
    const auto g = make_grid(64, static_cast<int>(state.range(0)));
    const auto u = random_state(g);
    for (auto _ : state) benchmark::DoNotOptimize(diagnose_w(u));
}
BENCHMARK(BM_DiagnoseW)->Arg(129)->Arg(513);

void BM_NonlinearTendency(benchmark::State& state) {
    const auto g = make_grid(static_cast<int>(state.range(0)), 129);
    const auto u = random_state(g);
    for (auto _ : state) benchmark::DoNotOptimize(nonlinear_tendency(u));
}
BENCHMARK(BM_NonlinearTendency)->Arg(64)->Arg(128);

void BM_IfRk4Nonlinear(benchmark::State& state) {
    const auto g = make_grid(64, 129);
    const auto u = random_state(g);
    const Tendency t = [](const SpectralField& s) { return nonlinear_tendency(s); };
    for (auto _ : state) benchmark::DoNotOptimize(ifrk4_step(u, 1e-3, t));
}
BENCHMARK(BM_IfRk4Nonlinear);

void BM_IfRk4Linear(benchmark::State& state) {
    const int nz = static_cast<int>(state.range(0));
    const auto g = make_grid(64, nz);
    const auto U = ShearProfile::tanh_profile(nz, 20.0);
    const auto phi = eigenmode_data(g, U, find_gamma(U), 2).phi0_hat;
    LinearPsiOperator op(g, U);
    const Tendency t = [&](const SpectralField& s) { return op.apply(s, false); };
    for (auto _ : state) benchmark::DoNotOptimize(ifrk4_step(phi, 1e-3, t));
}
BENCHMARK(BM_IfRk4Linear)->Arg(513)->Arg(2049);

void BM_FindGamma(benchmark::State& state) {
    const auto U = ShearProfile::tanh_profile(static_cast<int>(state.range(0)), 20.0);
    for (auto _ : state) benchmark::DoNotOptimize(find_gamma(U));
}
BENCHMARK(BM_FindGamma)->Arg(1025)->Arg(4097);

}  // namespace

BENCHMARK_MAIN();
