#include <benchmark/benchmark.h>

#include "forge/contour.hpp"
#include "forge/metric.hpp"

namespace {

forge::ExprPtr sample_expr() {
    using namespace forge;
    // (z + 1/z^2) * exp(z) + log(z)
    return add(mul(add(var_z(), ipow(var_z(), -2)), expe(var_z())),
               loge(var_z()));
}

void BM_ExprEval(benchmark::State& state) {
    auto e = sample_expr();
    forge::cplx z{0.3, 0.4};
    for (auto _ : state) benchmark::DoNotOptimize(forge::eval(e, z));
}
BENCHMARK(BM_ExprEval);

void BM_ExprDifferentiate(benchmark::State& state) {
    auto e = sample_expr();
    for (auto _ : state) benchmark::DoNotOptimize(forge::differentiate(e));
}
BENCHMARK(BM_ExprDifferentiate);

void BM_ClassifySingularity(benchmark::State& state) {
    auto e = forge::ipow(forge::var_z(), -3);
    for (auto _ : state)
        benchmark::DoNotOptimize(forge::classify_singularity(e));
}
BENCHMARK(BM_ClassifySingularity);

void BM_RadialPartialLengths(benchmark::State& state) {
    auto lambda = [](double r) { return 1.0 / r; };
    forge::LengthOptions opt;
    for (auto _ : state)
        benchmark::DoNotOptimize(forge::radial_partial_lengths(lambda, 0.5, opt));
}
BENCHMARK(BM_RadialPartialLengths);

}  // namespace

BENCHMARK_MAIN();
