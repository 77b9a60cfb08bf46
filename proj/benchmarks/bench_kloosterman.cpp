#include <benchmark/benchmark.h>

#include <vector>

#include "hkloost/exact_formula.hpp"
#include "hkloost/kloosterman.hpp"
#include "hkloost/special_fn.hpp"
#include "hkloost/test_function.hpp"

using namespace hkloost;

namespace {

const MultiplierSpec kNu = MultiplierSpec::eta(3).conjugate().twisted(3);

void BM_SumTable(benchmark::State& state) {
    const std::int64_t c = state.range(0);
    for (auto _ : state) {
        auto v = detail::kloosterman_sum_with({0, 1, kNu, c}, detail::TermPath::Table);
        benchmark::DoNotOptimize(v.value);
    }
    state.SetItemsProcessed(state.iterations() * c);
}
BENCHMARK(BM_SumTable)->Arg(999)->Arg(9999)->Arg(99999);

void BM_SumDirect(benchmark::State& state) {
    const std::int64_t c = state.range(0);
    for (auto _ : state) {
        auto v = detail::kloosterman_sum_with({0, 1, kNu, c}, detail::TermPath::Direct);
        benchmark::DoNotOptimize(v.value);
    }
    state.SetItemsProcessed(state.iterations() * c);
}
BENCHMARK(BM_SumDirect)->Arg(999)->Arg(9999);

void BM_SumExact(benchmark::State& state) {
    for (auto _ : state) {
        auto v = kloosterman_sum_exact({0, 1, kNu, state.range(0)});
        benchmark::DoNotOptimize(v.value);
    }
}
BENCHMARK(BM_SumExact)->Arg(99);

void BM_PartialSumsDyadic(benchmark::State& state) {
    for (auto _ : state) {
        auto s = partial_sums(kNu, 0, 1, state.range(0), Sampling::dyadic());
        benchmark::DoNotOptimize(s.rows.data());
    }
}
BENCHMARK(BM_PartialSumsDyadic)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_ExactFormula(benchmark::State& state) {
    for (auto _ : state) {
        auto r = mock_theta_coefficient(5, state.range(0));
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_ExactFormula)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BesselJ(benchmark::State& state) {
    double u = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_j(0.5, u));
        u = u < 40 ? u + 0.37 : 0.1;
    }
}
BENCHMARK(BM_BesselJ);

void BM_PhiHat(benchmark::State& state) {
    const TestFunction tf = build_phi_default(4 * 3.141592653589793, 4e4 * 3.141592653589793);
    for (auto _ : state) benchmark::DoNotOptimize(phi_hat(tf, 0.5, 1.0).value);
}
BENCHMARK(BM_PhiHat)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
