#include <benchmark/benchmark.h>

#include <osb/experiments.hpp>

using namespace osb;

namespace {

Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

const ConvexBody& planar_body() {
    static const ConvexBody body = make_body(BodySpec::constant_width_spec(0.1));
    return body;
}

const ConvexBody& ellipsoid4d() {
    static const ConvexBody body = make_body(BodySpec::ellipsoid_spec({1.0, 0.8, 1.2, 0.9}));
    return body;
}

}  // namespace

static void BM_SupportPoint2D(benchmark::State& state) {
    const auto& body = planar_body();
    const Vec v = v2(0.6, 0.8);
    for (auto _ : state) benchmark::DoNotOptimize(body.support_point(v));
}
BENCHMARK(BM_SupportPoint2D);

static void BM_GaugeRadialSolve2D(benchmark::State& state) {
    const auto& body = planar_body();  // no closed-form gauge: radial Newton
    const Vec x = v2(3.0, 4.0);
    for (auto _ : state) benchmark::DoNotOptimize(body.gauge(x));
}
BENCHMARK(BM_GaugeRadialSolve2D);

static void BM_ReflectCold2D(benchmark::State& state) {
    const OuterBilliardMap map(planar_body());
    const Vec x = v2(17.0, 5.0);
    for (auto _ : state) benchmark::DoNotOptimize(map.reflect_minus(x));
}
BENCHMARK(BM_ReflectCold2D);

static void BM_ReflectCold4D(benchmark::State& state) {
    const OuterBilliardMap map(ellipsoid4d());
    Vec x(4);
    x << 17.0, 5.0, -9.0, 2.0;
    for (auto _ : state) benchmark::DoNotOptimize(map.reflect_minus(x));
}
BENCHMARK(BM_ReflectCold4D);

static void BM_ReflectWarm4D(benchmark::State& state) {
    const OuterBilliardMap map(ellipsoid4d());
    Vec x(4);
    x << 17.0, 5.0, -9.0, 2.0;
    const Vec hint = map.reflect_minus(x).v;
    for (auto _ : state) benchmark::DoNotOptimize(map.reflect_minus(x, &hint));
}
BENCHMARK(BM_ReflectWarm4D);

static void BM_DoubleStep4D(benchmark::State& state) {
    const OuterBilliardMap map(ellipsoid4d());
    Vec x(4);
    x << 40.0, 11.0, -23.0, 8.0;
    for (auto _ : state) benchmark::DoNotOptimize(map.square(x));
}
BENCHMARK(BM_DoubleStep4D);

static void BM_ShadowFieldEval4D(benchmark::State& state) {
    const HamiltonianAtInfinity h(ellipsoid4d());
    Vec x(4);
    x << 40.0, 11.0, -23.0, 8.0;
    for (auto _ : state) benchmark::DoNotOptimize(h.field_V(x));
}
BENCHMARK(BM_ShadowFieldEval4D);

static void BM_HamiltonianNorm4D(benchmark::State& state) {
    const HamiltonianAtInfinity h(ellipsoid4d());
    Vec x(4);
    x << 40.0, 11.0, -23.0, 8.0;
    for (auto _ : state) benchmark::DoNotOptimize(h.value(x));
}
BENCHMARK(BM_HamiltonianNorm4D);

static void BM_FlowTime1(benchmark::State& state) {
    const HamiltonianAtInfinity h(ellipsoid4d());
    Vec x(4);
    x << 40.0, 11.0, -23.0, 8.0;
    for (auto _ : state) benchmark::DoNotOptimize(flow(h, x, 1.0));
}
BENCHMARK(BM_FlowTime1);

static void BM_Orbit100Steps(benchmark::State& state) {
    const OuterBilliardMap map(ellipsoid4d());
    Vec x(4);
    x << 40.0, 11.0, -23.0, 8.0;
    for (auto _ : state) benchmark::DoNotOptimize(map.orbit(x, 100));
}
BENCHMARK(BM_Orbit100Steps);

BENCHMARK_MAIN();
