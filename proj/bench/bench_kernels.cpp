#include "chi2/cavity.hpp"
#include "chi2/focusing_kernels.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

std::vector<std::pair<double, double>> zeta_grid(int n) {
    std::vector<std::pair<double, double>> z;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            z.emplace_back(0.2 * std::pow(15.0, double(i) / (n - 1)), 0.2 * std::pow(15.0, double(j) / (n - 1)));
    return z;
}

void BM_HGridSerial(benchmark::State& st) {
    auto z = zeta_grid(int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(chi2::peak_h_grid_serial(z, 16.4));
}

void BM_HGridOmp(benchmark::State& st) {
    auto z = zeta_grid(int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(chi2::peak_h_grid_omp(z, 16.4));
}

std::vector<double> d_values(int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = 0.020 + 0.008 * i / (n - 1);
    return v;
}

void BM_StabilitySerial(benchmark::State& st) {
    auto v = d_values(int(st.range(0)));
    auto layout = chi2::layout_a();
    for (auto _ : st) benchmark::DoNotOptimize(chi2::stability_scan_serial(layout, chi2::LayoutParam::DMc, v));
}

void BM_StabilityOmp(benchmark::State& st) {
    auto v = d_values(int(st.range(0)));
    auto layout = chi2::layout_a();
    for (auto _ : st) benchmark::DoNotOptimize(chi2::stability_scan_omp(layout, chi2::LayoutParam::DMc, v));
}

} // namespace

BENCHMARK(BM_HGridSerial)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HGridOmp)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StabilitySerial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_StabilityOmp)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
