#include <benchmark/benchmark.h>

#include <ncdq/cstar_field.hpp>
#include <ncdq/experiment.hpp>
#include <random>

using namespace ncdq;

namespace {

FourierElement dense_element(int n, int radius) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  FourierElement a(n);
  std::vector<int> k(2 * n, -radius);
  for (;;) {
    a.set_coeff(k, Complex(coef(rng), coef(rng)));
    int axis = 0;
    while (axis < 2 * n && ++k[axis] > radius) k[axis++] = -radius;
    if (axis == 2 * n) break;
  }
  return a;
}

void BM_StarProduct(benchmark::State& state) {
  const int radius = static_cast<int>(state.range(0));
  auto data = DeformationData::standard(1, 0.7);
  auto a = dense_element(1, radius);
  auto b = dense_element(1, radius);
  for (auto _ : state) {
    benchmark::DoNotOptimize(star_product(data, a, b));
  }
  state.SetComplexityN((2 * radius + 1) * (2 * radius + 1));
}
BENCHMARK(BM_StarProduct)->Arg(2)->Arg(4)->Arg(6)->Complexity();

void BM_Smooth(benchmark::State& state) {
  auto data = DeformationData::standard(1, 0.7);
  auto a = dense_element(1, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(smooth(data, a));
  }
}
BENCHMARK(BM_Smooth)->Arg(4)->Arg(8);

void BM_WickSeries(benchmark::State& state) {
  auto data = DeformationData::standard(1, 0.5);
  auto a = dense_element(1, 2);
  SeriesTruncation trunc;
  trunc.Lmax = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wick_series(data, a, trunc));
  }
}
BENCHMARK(BM_WickSeries)->Arg(6)->Arg(12);

void BM_NormBracket(benchmark::State& state) {
  auto data = DeformationData::standard(1, 0.5);
  auto a = dense_element(1, 2);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_bracket(data, a, N));
  }
}
BENCHMARK(BM_NormBracket)->Arg(8)->Arg(16);

void BM_OracleSmoothMode(benchmark::State& state) {
  auto data = DeformationData::standard(1, 0.5);
  QuadratureConfig cfg;
  cfg.order = static_cast<int>(state.range(0));
  Integrand task{Integrand::Kind::S_hbar_on_mode, data, {2, -1}, {}, {}, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(task, cfg));
  }
}
BENCHMARK(BM_OracleSmoothMode)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
