#include <benchmark/benchmark.h>

#include <random>

#include "cdbs/fixtures.hpp"
#include "cdbs/quasi.hpp"
#include "cdbs/study.hpp"

using namespace cdbs;

namespace {

DiversifiedSpace& lshape_space() {
    static DiversifiedSpace ds =
        build_space(fixture_domain("lshape"), KnotSpec::uniform(0.1), KnotSpec::uniform(0.1),
                    {3, 3}, -1);
    return ds;
}

void BM_EvalBspline(benchmark::State& state) {
    KnotWindow t = uniform_window(0.1, 0.0, 2.0, static_cast<int>(state.range(0)), 4);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ux(0.2, 1.8);
    double x = ux(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_bspline(t, t.locate(x) - 1, x));
        x += 1e-9;
    }
}
BENCHMARK(BM_EvalBspline)->Arg(2)->Arg(3)->Arg(4);

void BM_ComponentQuery(benchmark::State& state) {
    GraphDomain dom = fixture_domain("u_domain");
    double eps = dom.h0() / (8.0 * state.range(0));
    Box probe{{0.8, 0.8}, {2.0, 1.6}};
    for (auto _ : state) benchmark::DoNotOptimize(components(dom, probe, eps));
}
BENCHMARK(BM_ComponentQuery)->Arg(1)->Arg(4);

void BM_DiversifiedEval(benchmark::State& state) {
    DiversifiedSpace& ds = lshape_space();
    std::vector<double> coeffs(ds.splines().size(), 0.7);
    auto pts = ds.sample_points(512, 3);
    size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ds.eval_combination(coeffs, pts[k]));
        k = (k + 1) & 511;
    }
}
BENCHMARK(BM_DiversifiedEval);

void BM_QuasiCoefficient(benchmark::State& state) {
    DiversifiedSpace& ds = lshape_space();
    QuasiOperator op(ds);
    Field f = [](Vec2 x) { return std::sin(x.x) * std::exp(x.y); };
    int j = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(op.coefficient(j, f));
        j = (j + 1) % static_cast<int>(ds.splines().size());
    }
}
BENCHMARK(BM_QuasiCoefficient);

}  // namespace

BENCHMARK_MAIN();
