#include <benchmark/benchmark.h>

#include "toda/duality.hpp"
#include "toda/gauge.hpp"
#include "toda/lattice.hpp"
#include "toda/matrix.hpp"
#include "toda/sampling.hpp"

namespace {

using namespace toda;

ActionAngleState make_aa(int n) {
    Rng rng(99);
    return sample_action_angle(rng, n);
}

void BM_aa_to_toda(benchmark::State& state) {
    const ActionAngleState a = make_aa(int(state.range(0)));
    ToleranceConfig tol;
    tol.check_dual_route = false;
    for (auto _ : state) benchmark::DoNotOptimize(aa_to_toda(a, tol));
}
BENCHMARK(BM_aa_to_toda)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_aa_to_toda_checked(benchmark::State& state) {
    const ActionAngleState a = make_aa(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(aa_to_toda(a));
}
BENCHMARK(BM_aa_to_toda_checked)->Arg(4)->Arg(8);

void BM_toda_to_aa(benchmark::State& state) {
    const TodaState s = aa_to_toda(make_aa(int(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(toda_to_aa(s));
}
BENCHMARK(BM_toda_to_aa)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_minors_cauchy_binet(benchmark::State& state) {
    Rng rng(99);
    const MoserState m = sample_moser(rng, int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(minors_cauchy_binet(m));
}
BENCHMARK(BM_minors_cauchy_binet)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_qr_positive(benchmark::State& state) {
    Rng rng(99);
    const MoserState m = sample_moser(rng, int(state.range(0)));
    const SquareMatrix g = gamma_matrix(m);
    for (auto _ : state) benchmark::DoNotOptimize(qr_positive(g));
}
BENCHMARK(BM_qr_positive)->Arg(4)->Arg(8)->Arg(16);

void BM_sym_eigen(benchmark::State& state) {
    const TodaState s = aa_to_toda(make_aa(int(state.range(0))));
    const SquareMatrix l = lax_matrix(s);
    for (auto _ : state) benchmark::DoNotOptimize(sym_eigen_desc(l));
}
BENCHMARK(BM_sym_eigen)->Arg(4)->Arg(8)->Arg(16);

void BM_verlet_flow(benchmark::State& state) {
    const TodaState s = aa_to_toda(make_aa(4));
    for (auto _ : state) benchmark::DoNotOptimize(verlet_flow(s, 1.0, 1e-3));
}
BENCHMARK(BM_verlet_flow);

void BM_dual_flow_numeric(benchmark::State& state) {
    Rng rng(99);
    const ActionAngleState a = sample_action_angle(rng, 3, 0.5, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(dual_flow_numeric(a, 0.1, 1e-3));
}
BENCHMARK(BM_dual_flow_numeric);

} // namespace

BENCHMARK_MAIN();
