// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "dwc/griffiths.hpp"

namespace {

using dwc::Exec;
using dwc::Polynomial;
using dwc::Rational;

Polynomial<Rational> fermat(std::size_t nvars, int m)
{
    Polynomial<Rational> f(nvars);
    for (std::size_t i = 0; i < nvars; ++i) f.add_term(dwc::Monomial::variable(nvars, i, m), Rational(1));
    return f;
}

Polynomial<Rational> deformed_quartic()
{
    auto f = fermat(4, 4);
    f.add_term(dwc::Monomial({1, 1, 1, 1}), Rational(-4));
    f.add_term(dwc::Monomial({2, 1, 0, 1}), Rational(3, 2));
    return f;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_Assembly(benchmark::State& state)
{
    auto f = deformed_quartic();
    for (auto _ : state) {
        auto c = dwc::assemble_truncated_complex(f, dwc::StrandSpec{4, 4, 0, {}}, 8, dwc::Differential::Twisted,
                                                 exec_of(state));
        benchmark::DoNotOptimize(c.maps.size());
    }
}

void BM_StaircaseRank(benchmark::State& state)
{
    auto c = dwc::assemble_truncated_complex(deformed_quartic(), dwc::StrandSpec{4, 4, 0, {}}, 4);
    for (auto _ : state) {
        std::size_t r = 0;
        for (const auto& m : c.maps) r += dwc::exact_rank(m, exec_of(state));
        benchmark::DoNotOptimize(r);
    }
}

void BM_RankReference(benchmark::State& state)
{
    auto c = dwc::assemble_truncated_complex(deformed_quartic(), dwc::StrandSpec{4, 4, 0, {}}, 4);
    for (auto _ : state) {
        std::size_t r = 0;
        for (const auto& m : c.maps) r += dwc::rank_reference(m);
        benchmark::DoNotOptimize(r);
    }
}

void BM_JacobianHilbert(benchmark::State& state)
{
    auto f = fermat(5, 5);
    for (auto _ : state) benchmark::DoNotOptimize(dwc::jacobian_hilbert(f, exec_of(state)).milnor);
}

}  // namespace

BENCHMARK(BM_Assembly)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StaircaseRank)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobianHilbert)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
