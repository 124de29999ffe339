#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ccdeg/certifier.hpp"
#include "ccdeg/families.hpp"
#include "ccdeg/jacobian.hpp"
#include "ccdeg/reduction.hpp"
#include "ccdeg/residual.hpp"

namespace {

using namespace ccdeg;

MassVector unit_masses(std::size_t n) {
  return MassVector(std::vector<double>(n, 1.0));
}

void BM_residual(benchmark::State& state) {
  auto q = square_configuration();
  auto m = unit_masses(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(residual(Form::III, q, m));
}
BENCHMARK(BM_residual);

void BM_jacobian_analytic(benchmark::State& state) {
  auto q = square_configuration();
  auto m = unit_masses(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(jacobian_analytic(Form::III, q, m));
}
BENCHMARK(BM_jacobian_analytic);

void BM_reduce(benchmark::State& state) {
  auto q = rhombus_configuration(1.0);
  auto m = rhombus_masses(rhombus_mass(1.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(reduce(Form::III, q, m));
}
BENCHMARK(BM_reduce);

void BM_rhombus_det_interval_point(benchmark::State& state) {
  Interval a(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(rhombus_detJ2_interval(a));
}
BENCHMARK(BM_rhombus_det_interval_point);

void BM_rhombus_det_interval_wide(benchmark::State& state) {
  Interval a(0.9, 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(rhombus_detJ2_interval(a));
}
BENCHMARK(BM_rhombus_det_interval_wide);

void BM_g_poly(benchmark::State& state) {
  double pole = std::sqrt(3.0) / 3.0;
  Interval box(pole, pole + 1e-4);
  for (auto _ : state) benchmark::DoNotOptimize(rhombus_G_poly(box));
}
BENCHMARK(BM_g_poly);

void BM_certify_subrange(benchmark::State& state) {
  Interval range(1.0, 1.2);
  for (auto _ : state) {
    auto result = certify_positive(rhombus_detJ2_interval, range, 30);
    benchmark::DoNotOptimize(result.certified);
  }
}
BENCHMARK(BM_certify_subrange);

void BM_newton(benchmark::State& state) {
  auto m = unit_masses(4);
  auto start = square_configuration();
  start.coords()[0] += 0.013;
  start.coords()[3] -= 0.01;
  start.coords()[6] += 0.008;
  for (auto _ : state)
    benchmark::DoNotOptimize(newton_solve(Form::II, m, start, {}));
}
BENCHMARK(BM_newton);

}  // namespace

BENCHMARK_MAIN();
