#include <benchmark/benchmark.h>

#include "scholz/addchain.hpp"
#include "scholz/arith.hpp"
#include "scholz/cubic.hpp"
#include "scholz/discbounds.hpp"
#include "scholz/ell2.hpp"
#include "scholz/quadratic.hpp"

using namespace scholz;

static void BM_ClassGroupImaginary(benchmark::State& state)
{
    auto d = quad::fundamental_discriminant(-state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(quad::class_group(d, false));
}
BENCHMARK(BM_ClassGroupImaginary)->Arg(182)->Arg(19677)->Arg(1000003);

static void BM_ClassGroupReal(benchmark::State& state)
{
    auto d = quad::fundamental_discriminant(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(quad::class_group(d, true));
}
BENCHMARK(BM_ClassGroupReal)->Arg(205)->Arg(546)->Arg(100049);

static void BM_FundamentalUnit(benchmark::State& state)
{
    auto d = quad::fundamental_discriminant(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(quad::fundamental_unit(d));
}
BENCHMARK(BM_FundamentalUnit)->Arg(94)->Arg(1000003);

static void BM_Reflection(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(ell2::reflection_check(-19677));
}
BENCHMARK(BM_Reflection);

static void BM_OptimalChain(benchmark::State& state)
{
    auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(addchain::optimal_chain(n));
}
BENCHMARK(BM_OptimalChain)->Arg(127)->Arg(1087)->Arg(4095)->Unit(benchmark::kMillisecond);

static void BM_UnitSearch(benchmark::State& state)
{
    auto K = cubic::period_field(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(cubic::unit_search(K, 50));
}
BENCHMARK(BM_UnitSearch)->Arg(7)->Arg(163)->Unit(benchmark::kMillisecond);

static void BM_Factor(benchmark::State& state)
{
    mpz_class n = mpz_class(1000003) * 999999937;
    for (auto _ : state)
        benchmark::DoNotOptimize(arith::factor(n));
}
BENCHMARK(BM_Factor);

static void BM_V4Count(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(discbounds::v4_count_only(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_V4Count)->Arg(1'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
