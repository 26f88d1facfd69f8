#include <benchmark/benchmark.h>

#include "nfriesz/fields.hpp"
#include "nfriesz/kernel.hpp"
#include "nfriesz/riesz.hpp"
#include "nfriesz/special.hpp"
#include "nfriesz/zetas.hpp"

using namespace nfriesz;

static void BM_LogGamma(benchmark::State& state) {
  Complex z(0.3, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_gamma(z));
    z += Complex(0.0, 0.01);
  }
}
BENCHMARK(BM_LogGamma);

static void BM_BesselY(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(bessel_y(1.3, x));
}
BENCHMARK(BM_BesselY)->Arg(5)->Arg(100)->Arg(1000);

static void BM_DedekindZeta(benchmark::State& state) {
  const FieldDescriptor f = FieldDescriptor::gaussian();
  const Complex s(0.5, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dedekind_zeta(f, s));
}
BENCHMARK(BM_DedekindZeta)->Arg(10)->Arg(100)->Arg(1000);

static void BM_IdealCounts(benchmark::State& state) {
  const FieldDescriptor f = FieldDescriptor::gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(ideal_count_series(f, state.range(0)));
}
BENCHMARK(BM_IdealCounts)->Arg(10000)->Arg(1000000);

static void BM_KernelDirect(benchmark::State& state) {
  KernelQuery q;
  q.nu = 3.0;
  q.alpha = 0.25;
  q.x = static_cast<double>(state.range(0));
  q.shape = FieldDescriptor::gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(kernel_direct(q));
}
BENCHMARK(BM_KernelDirect)->Arg(5)->Arg(50)->Arg(500);

static void BM_KernelDecomposed(benchmark::State& state) {
  KernelQuery q;
  q.nu = 3.0;
  q.alpha = 0.25;
  q.x = static_cast<double>(state.range(0));
  q.shape = FieldDescriptor::gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(kernel_decomposed(q));
}
BENCHMARK(BM_KernelDecomposed)->Arg(5)->Arg(50)->Arg(500);

static void BM_VerifyRational(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_identity(FieldDescriptor::rational(), 0.3, 1.0, 10.5, state.range(0)));
  }
}
BENCHMARK(BM_VerifyRational)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_ErrorScan(benchmark::State& state) {
  const std::vector<double> grid = log_grid(1e2, 1e4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(error_scan(FieldDescriptor::rational(), 0.0, 1.0, grid));
}
BENCHMARK(BM_ErrorScan)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
