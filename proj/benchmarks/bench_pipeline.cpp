#include <benchmark/benchmark.h>

#include "shellbend/harness.hpp"
#include "shellbend/measures.hpp"

using namespace shellbend;

namespace {

const ParamDomain kBox{-1.0, 1.0, -1.0, 1.0};

SurfaceExpr make_cylinder() { return cylinder_roll_surface(2.0, kBox); }

void BM_ParseExpr(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(parse_expr("R*sin(xi1/R) + 0.25*cos(xi2)^2 - xi1*xi2/3"));
}
BENCHMARK(BM_ParseExpr);

void BM_SurfaceEval(benchmark::State& state) {
    const SurfaceExpr s = make_cylinder();
    const Vec2 xi(0.3, -0.2);
    for (auto _ : state)
        benchmark::DoNotOptimize(s.eval(xi));
}
BENCHMARK(BM_SurfaceEval);

void BM_PointGeometry(benchmark::State& state) {
    const SurfaceExpr s = make_cylinder();
    const Vec2 xi(0.3, -0.2);
    for (auto _ : state)
        benchmark::DoNotOptimize(point_geometry(s, xi));
}
BENCHMARK(BM_PointGeometry);

void BM_PolarDecompose(benchmark::State& state) {
    const SurfaceExpr ref = plane_surface(kBox);
    const SurfaceExpr def = make_cylinder();
    const Vec2 xi(0.3, -0.2);
    const PointGeometry gr = point_geometry(ref, xi);
    const PointGeometry gd = point_geometry(def, xi);
    for (auto _ : state)
        benchmark::DoNotOptimize(polar_decompose(gr, gd));
}
BENCHMARK(BM_PolarDecompose);

void BM_MeasuresPerPoint(benchmark::State& state) {
    // the full per-point pipeline: two geometries, the polar factor, and
    // all five measures
    const SurfaceExpr ref = plane_surface(kBox);
    const SurfaceExpr def = make_cylinder();
    const Vec2 xi(0.3, -0.2);
    for (auto _ : state) {
        const MeasureSet ms =
            bending_measures(polar_decompose(point_geometry(ref, xi), point_geometry(def, xi)));
        benchmark::DoNotOptimize(ms);
    }
}
BENCHMARK(BM_MeasuresPerPoint);

void BM_ScalingCheck5x5(benchmark::State& state) {
    const SurfacePair pair =
        random_surface_pair(1ull, SurfaceFamily::builtin(FamilyKind::GraphTrigonometric));
    for (auto _ : state)
        benchmark::DoNotOptimize(check_scaling_law(pair, {2.0}, GridSpec{5, 5, 0.1}, 1e-10));
}
BENCHMARK(BM_ScalingCheck5x5);

} // namespace

BENCHMARK_MAIN();
