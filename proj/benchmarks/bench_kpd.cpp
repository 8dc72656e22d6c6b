#include <benchmark/benchmark.h>

#include <random>

#include "kpdkit/io.hpp"
#include "kpdkit/matform.hpp"
#include "kpdkit/stp.hpp"
#include "kpdkit/sumkpd.hpp"
#include "kpdkit/sva.hpp"

namespace {

using namespace kpdkit;

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(g);
  return v;
}

// Cube of side n, order 4.
Shape cube(std::size_t n) { return Shape{n, n, n, n}; }

void BM_AlsUpdate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Shape shape = cube(n);
  const auto v = random_values(shape.total(), 1);
  std::vector<std::vector<double>> xs;
  for (std::size_t s = 0; s < 4; ++s) xs.push_back(random_values(n, 2 + s));
  std::size_t axis = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(als_update(v, shape, xs, axis));
    axis = axis % 4 + 1;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * shape.total()));
}
BENCHMARK(BM_AlsUpdate)->Arg(4)->Arg(8)->Arg(16);

void BM_NkpSingleStart(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Shape shape = cube(n);
  const auto v = random_values(shape.total(), 3);
  SvaConfig cfg;
  for (auto _ : state) {
    RngStream rng(7);
    benchmark::DoNotOptimize(nkp(v, shape, cfg, rng));
  }
}
BENCHMARK(BM_NkpSingleStart)->Arg(4)->Arg(8);

void BM_PermMap(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const Shape shape(std::vector<std::size_t>(d, 2));
  std::vector<std::size_t> images(d);
  for (std::size_t k = 0; k < d; ++k) images[k] = d - k;
  const Permutation sigma(images);
  for (auto _ : state) benchmark::DoNotOptimize(perm_map(shape, sigma));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * shape.total()));
}
BENCHMARK(BM_PermMap)->Arg(8)->Arg(12)->Arg(16);

void BM_ApplyPerm(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const Shape shape(std::vector<std::size_t>(d, 2));
  std::vector<std::size_t> images(d);
  for (std::size_t k = 0; k < d; ++k) images[k] = d - k;
  const auto map = perm_map(shape, Permutation(images));
  const auto v = random_values(shape.total(), 4);
  for (auto _ : state) benchmark::DoNotOptimize(apply_perm(map, v));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * shape.total()));
}
BENCHMARK(BM_ApplyPerm)->Arg(8)->Arg(12)->Arg(16);

void BM_CollarMatKpd(benchmark::State& state) {
  const Matrix a = read_matrix(std::filesystem::path(KPDKIT_DATA_DIR) / "collar16.hm");
  const std::vector<std::size_t> dims(static_cast<std::size_t>(state.range(0)),
                                      state.range(0) == 2 ? 4 : 2);
  SumConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(mat_sum_kpd({a, dims, dims}, cfg));
}
BENCHMARK(BM_CollarMatKpd)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
