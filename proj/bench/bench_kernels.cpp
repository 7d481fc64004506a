// Serial reference vs OpenMP paths of the heavy kernels.

#include <benchmark/benchmark.h>

#include "bel/domains.hpp"
#include "bel/generators.hpp"
#include "bel/grid.hpp"
#include "bel/spaces.hpp"
#include "bel/transforms.hpp"

using namespace bel;

namespace {

struct QuadratureFixture {
  TorusGrid g = make_grid(128, 8.0);
  DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  Field f = plateau_bump(g, 1.0, 0.0, 1.0, 1);
  CZKernelSpec kernel = beurling_kernel();
};

void BM_TOmegaSerial(benchmark::State& state) {
  QuadratureFixture fx;
  for (auto _ : state) {
    Field out = apply_T_omega_serial(fx.kernel, fx.f, fx.disk);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_TOmegaOpenMP(benchmark::State& state) {
  QuadratureFixture fx;
  for (auto _ : state) {
    Field out = apply_T_omega_direct(fx.kernel, fx.f, fx.disk);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_TOmegaSpectral(benchmark::State& state) {
  QuadratureFixture fx;
  for (auto _ : state) {
    Field out = apply_T_omega(fx.kernel, fx.f, fx.disk);
    benchmark::DoNotOptimize(out.data());
  }
}

double besov_domain_serial(const Field& f, const DomainMask& om, double s,
                           double p) {
  const TorusGrid& g = f.grid();
  const double h = g.spacing();
  const double h2 = g.cell_area();
  const int n = g.n;
  double lp = 0.0, dsum = 0.0;
  for (std::size_t xi : om.interior()) {
    lp += std::pow(std::abs(f[xi]), p);
    const cplx x = g.point(static_cast<int>(xi) / n, static_cast<int>(xi) % n);
    for (std::size_t yi : om.interior()) {
      const cplx y = g.point(static_cast<int>(yi) / n, static_cast<int>(yi) % n);
      const double r2 = std::norm(x - y);
      if (r2 < h * h * (1.0 - 1e-12)) continue;
      dsum += std::pow(std::abs(f[xi] - f[yi]), p) /
              std::pow(r2, 0.5 * (2.0 + s * p));
    }
  }
  return std::pow(lp * h2 + dsum * h2 * h2, 1.0 / p);
}

void BM_DomainNormSerial(benchmark::State& state) {
  const TorusGrid g = make_grid(128, 4.0);
  const Field f = sample(g, [](double x1, double x2) {
    return cplx(x1 + 0.2 * x2, 0.0);
  });
  const DomainMask square = DomainMask::rectangle(g, 0.0, 0.5, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(besov_domain_serial(f, square, 0.5, 2.0));
  }
}

void BM_DomainNormOpenMP(benchmark::State& state) {
  const TorusGrid g = make_grid(128, 4.0);
  const Field f = sample(g, [](double x1, double x2) {
    return cplx(x1 + 0.2 * x2, 0.0);
  });
  const DomainMask square = DomainMask::rectangle(g, 0.0, 0.5, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(besov_domain_norm(f, square, 0.5, 2.0).value);
  }
}

}  // namespace

BENCHMARK(BM_TOmegaSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TOmegaOpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TOmegaSpectral)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DomainNormSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DomainNormOpenMP)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
