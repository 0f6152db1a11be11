#include <benchmark/benchmark.h>

#include "qdent/distributions.hpp"
#include "qdent/kernel_qdf.hpp"
#include "qdent/sample.hpp"
#include "qdent/spacing_estimators.hpp"

using namespace qdent;

namespace {

Sample normal_sample(std::size_t n) {
    RngStream rng(1234, 0);
    return sample(Distribution::normal(0.0, 1.0), n, rng);
}

void bm_vasicek(benchmark::State& state) {
    const Sample x = normal_sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(vasicek(x, {.m = 4}).value);
    }
}
BENCHMARK(bm_vasicek)->Arg(50)->Arg(500)->Arg(5000);

void bm_correa(benchmark::State& state) {
    const Sample x = normal_sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(correa(x, {.m = 4}).value);
    }
}
BENCHMARK(bm_correa)->Arg(50)->Arg(500)->Arg(5000);

void bm_yousefzadeh(benchmark::State& state) {
    const Sample x = normal_sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(yousefzadeh(x, {.m = 4}).value);
    }
}
BENCHMARK(bm_yousefzadeh)->Arg(50)->Arg(500);

void bm_qdf_single_eval(benchmark::State& state) {
    const Sample x = normal_sample(static_cast<std::size_t>(state.range(0)));
    const QdfEvaluator qhat(x, 0.0333);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qhat(0.37));
    }
}
BENCHMARK(bm_qdf_single_eval)->Arg(50)->Arg(500)->Arg(5000);

void bm_kernel_entropy(benchmark::State& state) {
    const Sample x = normal_sample(static_cast<std::size_t>(state.range(0)));
    KernelConfig cfg;
    cfg.h = 0.0333;
    for (auto _ : state) {
        benchmark::DoNotOptimize(entropy_hat(x, cfg).value);
    }
}
BENCHMARK(bm_kernel_entropy)->Arg(50)->Arg(200)->Arg(1000);

void bm_normal_quantile(benchmark::State& state) {
    double u = 0.0001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal_quantile(u));
        u += 0.0001;
        if (u >= 1.0) u = 0.0001;
    }
}
BENCHMARK(bm_normal_quantile);

void bm_student_t_quantile(benchmark::State& state) {
    const auto t3 = Distribution::student_t(3.0);
    double u = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(t3.quantile(u));
        u += 0.001;
        if (u >= 1.0) u = 0.001;
    }
}
BENCHMARK(bm_student_t_quantile);

} // namespace

BENCHMARK_MAIN();
