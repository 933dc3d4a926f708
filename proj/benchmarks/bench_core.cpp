#include <benchmark/benchmark.h>

#include "qfb/fit.hpp"
#include "qfb/models.hpp"
#include "qfb/polyalg.hpp"
#include "qfb/spectra.hpp"

using namespace qfb;

namespace {

void BM_BuildClosedForm(benchmark::State& state) {
    const ModelSpec spec = dps_model(1.0, 0.7, 0.45, HalfInt(static_cast<int>(state.range(0))));
    const InvariantSubspace sub = enumerate_subspace(spec, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_hamiltonian(spec, sub));
    }
}
BENCHMARK(BM_BuildClosedForm)->Arg(2)->Arg(8)->Arg(32);

void BM_BuildOracle(benchmark::State& state) {
    const ModelSpec spec = dps_model(1.0, 0.7, 0.45, HalfInt(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_oracle(spec, 2));
    }
}
BENCHMARK(BM_BuildOracle)->Arg(2)->Arg(8)->Arg(32);

void BM_Eigh(benchmark::State& state) {
    const int omega = static_cast<int>(state.range(0));
    const ModelSpec spec = dps_model(1.0, 0.7, 0.45, HalfInt(omega));
    const HamiltonianMatrix h = build_hamiltonian(spec, enumerate_subspace(spec, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigh(h));
    }
    state.SetComplexityN(h.dim);
}
BENCHMARK(BM_Eigh)->Arg(8)->Arg(32)->Arg(128)->Arg(512)->Complexity();

void BM_ExtractPolynomial(benchmark::State& state) {
    const KOperators k =
        make_k_operators(Realization::LE_pm, HalfInt(static_cast<int>(state.range(0))),
                         HalfInt(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_commutator_polynomial(k));
    }
}
BENCHMARK(BM_ExtractPolynomial)->Arg(4)->Arg(16)->Arg(64);

void BM_FitOneStep(benchmark::State& state) {
    const ModelSpec spec = dps_model(1.0, 1.0, 0.3, HalfInt(static_cast<int>(state.range(0))));
    const Spectrum target = eigh(build_hamiltonian(spec, enumerate_subspace(spec, 0)));
    const FamilyBuilder family = dps_family(1.0, 1.0, spec.omega_cap, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_q_chi(target, family, Metric::RMS, FitBounds::for_scale(0.3)));
    }
}
BENCHMARK(BM_FitOneStep)->Arg(2)->Arg(6)->Arg(12);

} // namespace

BENCHMARK_MAIN();
