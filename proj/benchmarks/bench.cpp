#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "gabor/framecheck.hpp"
#include "gabor/numerics.hpp"
#include "gabor/symbols.hpp"

using namespace gabor;

namespace {

ComplexMatrix random_square(std::size_t n) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {u(gen), u(gen)};
  return m;
}

GeneralWindow mixed(int M) {
  std::vector<PoleTerm> t;
  for (int k = 0; k < M; ++k) t.push_back({1.0, 0.1 + 0.15 * k, 1 + k % 2});
  return as_general(validate(t));
}

}  // namespace

static void BM_DetLu(benchmark::State& s) {
  const auto m = random_square(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(det_lu(m));
}
BENCHMARK(BM_DetLu)->Arg(4)->Arg(16)->Arg(64);

static void BM_SvdExtremes(benchmark::State& s) {
  const auto m = random_square(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(svd_extremes(m));
}
BENCHMARK(BM_SvdExtremes)->Arg(8)->Arg(32)->Arg(64);

static void BM_GeneralFamily(benchmark::State& s) {
  const auto g = mixed(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(general_symbol_family(g));
}
BENCHMARK(BM_GeneralFamily)->DenseRange(1, 6);

static void BM_FrameEstimate(benchmark::State& s) {
  const auto set = build_universal(0.5, 2);
  const Window w = validate({{1.0, std::log(2.0) / (2.0 * kPi), 1}, {1.0, std::log(3.0) / (2.0 * kPi), 1}});
  FrameConfig cfg;
  cfg.xi_steps = static_cast<int>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(frame_bounds_estimate(w, set, cfg));
}
BENCHMARK(BM_FrameEstimate)->Arg(16)->Arg(64);
BENCHMARK_MAIN();
