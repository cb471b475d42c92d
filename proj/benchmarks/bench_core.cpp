#include <benchmark/benchmark.h>

#include <vector>

#include "multimono/fourier_oracle.hpp"
#include "multimono/profile.hpp"
#include "multimono/radial_calculus.hpp"
#include "multimono/vm_algebra.hpp"

using namespace multimono;
namespace pf = multimono::profiles;

namespace {

void BM_ProfileDerivative(benchmark::State& state) {
  const auto f = pf::example1(0.5, 1.5, 2.0);
  const int order = static_cast<int>(state.range(0));
  double t = 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.derivative(order, t));
    t = t < 50.0 ? t * 1.01 : 0.7;
  }
}
BENCHMARK(BM_ProfileDerivative)->Arg(1)->Arg(4)->Arg(8)->Arg(16);

void BM_ComplexDerivative(benchmark::State& state) {
  const auto f = pf::example2(1.0, 1.2);
  double t = 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.derivative(4, t));
    t = t < 50.0 ? t * 1.01 : 0.7;
  }
}
BENCHMARK(BM_ComplexDerivative);

void BM_VmNorm(benchmark::State& state) {
  const auto f = pf::example1(0, 1, 2);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vm_norm(f, m).total);
}
BENCHMARK(BM_VmNorm)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MixedDerivative(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto f = pf::exp_decay(1);
  const PNorm pn(1.5, d);
  std::vector<double> x(d, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixed_derivative(f, pn, x));
    x[0] = x[0] < 3.0 ? x[0] + 0.01 : 0.8;
  }
}
BENCHMARK(BM_MixedDerivative)->DenseRange(1, 5);

void BM_MixedDerivativeFd(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto f = pf::exp_decay(1);
  const PNorm pn(1.5, d);
  const std::vector<double> x(d, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_derivative_fd(f, pn, x, 1e-3));
}
BENCHMARK(BM_MixedDerivativeFd)->DenseRange(1, 5);

void BM_Transform2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto field = sample_radial(pf::gaussian(1), PNorm(2, 2), 10.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(transform(field).values.data());
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n) * n);
}
BENCHMARK(BM_Transform2d)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

void BM_SampleRadial2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = pf::example2(1.0, 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(sample_radial(f, PNorm(2, 2), 10.0, n).values.data());
}
BENCHMARK(BM_SampleRadial2d)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
