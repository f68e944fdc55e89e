#include <benchmark/benchmark.h>
#include <omp.h>

#include "lattice_pdo/criteria.hpp"
#include "lattice_pdo/kernel.hpp"
#include "lattice_pdo/reference.hpp"
#include "lattice_pdo/schrodinger.hpp"
#include "lattice_pdo/symbols.hpp"

using namespace lpdo;

namespace {

const LatticeSpec kLine(1.0, 1);
const LatticeSpec kPlane(0.5, 2);

// Range(0) = truncation radius, Range(1) = OpenMP threads.
void BM_AssembleQuadrature(benchmark::State& state)
{
    omp_set_num_threads(static_cast<int>(state.range(1)));
    const auto sym = decaying_test_symbol(3.0, 2.0, 1.0);
    const BoxTruncation box(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble(sym, kLine, box, CoefficientMethod::quadrature));
}

void BM_AssembleQuadratureReference(benchmark::State& state)
{
    const auto sym = decaying_test_symbol(3.0, 2.0, 1.0);
    const BoxTruncation box(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::assemble(sym, kLine, box, CoefficientMethod::quadrature));
}

void BM_CriterionSums(benchmark::State& state)
{
    omp_set_num_threads(static_cast<int>(state.range(1)));
    const auto kernel = assemble(decaying_test_symbol(3.0, 2.0, 1.0), kLine, BoxTruncation(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(schur_l1_lp(kernel, 2.0));
        benchmark::DoNotOptimize(mixed_lp_sum(kernel, 2.0));
        benchmark::DoNotOptimize(nuclear_sum(kernel, 1.0, 2.0));
    }
}

void BM_CriterionSumsReference(benchmark::State& state)
{
    const auto kernel = assemble(decaying_test_symbol(3.0, 2.0, 1.0), kLine, BoxTruncation(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::schur_l1_lp(kernel, 2.0));
        benchmark::DoNotOptimize(reference::mixed_lp_sum(kernel, 2.0));
        benchmark::DoNotOptimize(reference::nuclear_sum(kernel, 1.0, 2.0));
    }
}

void BM_Hamiltonian(benchmark::State& state)
{
    omp_set_num_threads(static_cast<int>(state.range(1)));
    const auto v = Potential::anharmonic(1.0, 1);
    const BoxTruncation box(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_hamiltonian(kPlane, v, box));
}

void BM_HamiltonianReference(benchmark::State& state)
{
    const auto v = Potential::anharmonic(1.0, 1);
    const BoxTruncation box(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::build_hamiltonian(kPlane, v, box, 0.0));
}

}  // namespace

BENCHMARK(BM_AssembleQuadrature)->ArgsProduct({{40, 120}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AssembleQuadratureReference)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CriterionSums)->ArgsProduct({{500, 1000}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CriterionSumsReference)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hamiltonian)->ArgsProduct({{15, 30}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HamiltonianReference)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
