#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "krivine/calculus.hpp"
#include "krivine/experiment.hpp"
#include "krivine/triangulation.hpp"

using namespace krivine;

static void BM_TriangulationBuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double delta = 1.0 / static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Triangulation::build(n, delta));
}
BENCHMARK(BM_TriangulationBuild)->Args({2, 8})->Args({3, 4})->Args({3, 8})->Args({4, 2});

static void BM_Locate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto tri = Triangulation::build(n, 0.25);
  std::mt19937_64 rng(1);
  std::vector<Point> pts;
  for (int i = 0; i < 1024; ++i) pts.push_back(sample_sphere(n, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tri.locate(pts[i++ & 1023]));
}
BENCHMARK(BM_Locate)->Arg(2)->Arg(3)->Arg(4);

static void BM_PlToLatticeTerm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto tri = Triangulation::build(n, 0.5);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> a(tri.node_count());
  for (auto& v : a) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(pl_to_lattice_term(tri, a));
}
BENCHMARK(BM_PlToLatticeTerm)->Arg(2)->Arg(3)->Arg(4);

static void BM_PhiApprox(benchmark::State& state) {
  const CalculusContext ctx(random_tuple(LatticeSpace::sup(64), 2, 3));
  const auto H = p_sum_function(2, 2.0);
  const double delta = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phi_approx(ctx, H, delta));
}
BENCHMARK(BM_PhiApprox)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_KaltonVerify(benchmark::State& state) {
  ExperimentConfig c;
  c.experiment = Experiment::kalton;
  c.quad_ns = {static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(run_kalton(c));
}
BENCHMARK(BM_KaltonVerify)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
