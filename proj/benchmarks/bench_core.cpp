#include "dtoda/flows.hpp"
#include "dtoda/reductions.hpp"
#include "dtoda/special.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace dtoda;

namespace
{

LaurentSeries random_series(int length, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(static_cast<std::size_t>(length));
    for (auto &c : v) {
        c = {u(rng), u(rng)};
    }
    return LaurentSeries::polynomial(0, std::move(v));
}

const Hamiltonian h11({{1, 1, 1.0}});

void BM_Mul(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    const auto a = random_series(n, 1);
    const auto b = random_series(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mul(a, b));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Mul)->RangeMultiplier(2)->Range(16, 1024)->Complexity();

void BM_PairPowers(benchmark::State &state)
{
    const auto p = random_pair(7, 0.3, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(PairPowers(p, p.order() + 1, power_window(p, p.order() + 1)));
    }
}
BENCHMARK(BM_PairPowers)->Arg(8)->Arg(16)->Arg(32);

void BM_GrunskyTable(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    const auto p = random_pair(7, 0.3, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grunsky_table(p, n));
    }
}
BENCHMARK(BM_GrunskyTable)->Arg(8)->Arg(16)->Arg(32);

void BM_GrunskyViaInverse(benchmark::State &state)
{
    const auto p = random_pair(7, 0.3, 16);
    InverseSampling s;
    s.samples = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(grunsky_via_inverse(p, 16, s));
    }
}
BENCHMARK(BM_GrunskyViaInverse)->Arg(256)->Arg(1024);

void BM_Coordinates(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    const auto p = random_pair(7, 0.3, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coordinates(p, h11, n));
    }
}
BENCHMARK(BM_Coordinates)->Arg(8)->Arg(16)->Arg(32);

void BM_FlowField(benchmark::State &state)
{
    const auto p = random_pair(7, 0.3, 16);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(flow_field(p, h11, n));
    }
}
BENCHMARK(BM_FlowField)->Arg(0)->Arg(1)->Arg(-8)->Arg(16);

void BM_Rk4Step(benchmark::State &state)
{
    const auto p = random_pair(7, 0.3, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(step(p, h11, 1, 1e-2, StepMethod::rk4));
    }
}
BENCHMARK(BM_Rk4Step);

void BM_JacobianCheck(benchmark::State &state)
{
    const auto p = random_pair(7, 0.3, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobian_check(p, h11, 8));
    }
}
BENCHMARK(BM_JacobianCheck)->Unit(benchmark::kMillisecond);

void BM_GreenIdentity(benchmark::State &state)
{
    const auto g = LaurentSeries::polynomial(-1, {0.1, 0.0, 1.0}, Flavor::AtInfinity);
    for (auto _ : state) {
        benchmark::DoNotOptimize(green_identity_check(g, h11, 8));
    }
}
BENCHMARK(BM_GreenIdentity)->Unit(benchmark::kMillisecond);

void BM_SpecialSummation(benchmark::State &state)
{
    const auto p = random_pair(7, 0.3, 16);
    const MonomialCase mc{2, 3};
    for (auto _ : state) {
        const auto c = coordinates(p, mc.hamiltonian(), summation_order(p));
        benchmark::DoNotOptimize(generating_identity_check(p, c, mc));
    }
}
BENCHMARK(BM_SpecialSummation)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
