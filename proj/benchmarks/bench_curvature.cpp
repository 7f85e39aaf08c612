#include <benchmark/benchmark.h>

#include "soliton/invariant.hpp"
#include "soliton/solutions.hpp"
#include "soliton/tensor.hpp"

namespace {

using namespace soliton;

SolitonConfig config32() { return SolitonConfig(3, 2, Signature::riemannian(3)); }

ScalarField exp_phi_field() {
    return ScalarField(
        3, [](const Point& x) { return std::exp(x[0]); },
        [](const Point& x) {
            Vector g = Vector::Zero(3);
            g[0] = std::exp(x[0]);
            return g;
        },
        [](const Point& x) {
            Matrix h = Matrix::Zero(3, 3);
            h(0, 0) = std::exp(x[0]);
            return h;
        });
}

void BM_ConformalRicciClosed(benchmark::State& state) {
    Signature sig = Signature::riemannian(3);
    ScalarField phi = exp_phi_field();
    Point x(3);
    x << 0.2, -0.1, 0.3;
    for (auto _ : state) benchmark::DoNotOptimize(conformal_ricci(sig, phi, x));
}
BENCHMARK(BM_ConformalRicciClosed);

void BM_FdRicciBlockMetric5d(benchmark::State& state) {
    SolitonConfig cfg = config32();
    ProfileTriple triple = build_power_law(cfg, PowerLawParams{});
    Direction dir = classify_direction(cfg.sig, Vector::Unit(3, 0));
    WarpedData data = make_invariant_data(cfg, triple, dir);
    MetricField g = block_metric(data);
    Point p(5);
    p << 2.0, 0.1, -0.2, 0.15, 0.25;
    FDScheme scheme{1e-3, 2};
    for (auto _ : state) benchmark::DoNotOptimize(ricci(g, p, scheme));
}
BENCHMARK(BM_FdRicciBlockMetric5d);

void BM_OdeResidualSweep(benchmark::State& state) {
    SolitonConfig cfg = config32();
    ProfileTriple triple = build_power_law(cfg, PowerLawParams{});
    for (auto _ : state) {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            double xi = 0.2 + 4.8 * i / 199.0;
            worst = std::max(worst,
                             ode_residuals_unit(cfg, triple, xi, 1).max_abs());
        }
        benchmark::DoNotOptimize(worst);
    }
}
BENCHMARK(BM_OdeResidualSweep);

void BM_PhaseFlowBuild(benchmark::State& state) {
    SolitonConfig cfg = config32();
    PhaseFlowParams params;
    for (auto _ : state)
        benchmark::DoNotOptimize(build_phase_flow(cfg, params, {-0.8, 0.8}));
}
BENCHMARK(BM_PhaseFlowBuild);

void BM_NullQuadratureBuild(benchmark::State& state) {
    SolitonConfig cfg(3, 2, Signature::lorentzian(3));
    NullShapeSpec shape;
    shape.domain = {-1.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(build_null_shape(cfg, shape));
}
BENCHMARK(BM_NullQuadratureBuild);

} // namespace

BENCHMARK_MAIN();
