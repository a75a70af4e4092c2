#include <benchmark/benchmark.h>

#include "hots/coefficients.hpp"
#include "hots/graph.hpp"
#include "hots/solvers.hpp"
#include "hots/tensor.hpp"

#include <random>
#include <sstream>

using namespace hots;

namespace {

Graph gnp_graph(int n, double prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::ostringstream os;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (uni(rng) < prob) os << i << ' ' << j << "\n";
    }
  std::istringstream is(os.str());
  return load_edge_list(is, IndexBase::zero);
}

void BM_apply_bilinear_dense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = random_stochastic(n, 1);
  Vec x = uniform_vector(n), y = uniform_vector(n);
  for (auto _ : state) benchmark::DoNotOptimize(apply_bilinear(p, x, y));
  state.SetComplexityN(n);
}
BENCHMARK(BM_apply_bilinear_dense)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_tau(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = random_stochastic(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(tau(p).value);
  state.SetComplexityN(n);
}
BENCHMARK(BM_tau)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_tauH(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = random_stochastic(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(tauH(p));
  state.SetComplexityN(n);
}
BENCHMARK(BM_tauH)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_delta_closed_form(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = random_stochastic(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(delta_closed_form(p));
  state.SetComplexityN(n);
}
BENCHMARK(BM_delta_closed_form)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_delta_bruteforce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = random_stochastic(n, 5);
  for (auto _ : state) benchmark::DoNotOptimize(delta_bruteforce(p));
}
BENCHMARK(BM_delta_bruteforce)->DenseRange(4, 14, 2);

void BM_triangle_tensor(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = gnp_graph(n, 8.0 / n, 6);
  for (auto _ : state) {
    TriangleTensorStats stats;
    benchmark::DoNotOptimize(triangle_tensor(g, &stats));
  }
}
BENCHMARK(BM_triangle_tensor)->RangeMultiplier(4)->Range(64, 4096);

void BM_hopm_sparse_blend(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = gnp_graph(n, 8.0 / n, 7);
  auto op = blend_operator(g, 0.5);
  SolveOptions opt;
  opt.compute_certificate = false;
  for (auto _ : state) benchmark::DoNotOptimize(hopm(op, uniform_vector(n), opt));
}
BENCHMARK(BM_hopm_sparse_blend)->RangeMultiplier(4)->Range(64, 1024);

}  // namespace

BENCHMARK_MAIN();
