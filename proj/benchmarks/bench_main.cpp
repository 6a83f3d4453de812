#include <benchmark/benchmark.h>

#include <vector>

#include "spinnet/coloring.hpp"
#include "spinnet/network.hpp"
#include "spinnet/su2.hpp"

namespace {

using namespace spinnet;

const topology::Graph& tetrahedron() {
  static const topology::Graph g = topology::parse_graph(
      "name tetrahedron\n"
      "edge ab a b\nedge ac a c\nedge ad a d\nedge bc b c\nedge bd b d\nedge cd c d\n");
  return g;
}

void BM_CountLevelK(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(coloring::count_level_k(tetrahedron(), k));
}
BENCHMARK(BM_CountLevelK)->DenseRange(2, 10, 4);

void BM_Verlinde(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(coloring::verlinde_number(3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Verlinde)->Arg(6)->Arg(60);

void BM_IrrepMatrix(benchmark::State& state) {
  su2rep::Rng rng(1);
  const auto u = su2rep::haar_sample(rng);
  const int c = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(su2rep::irrep_matrix(c, u));
}
BENCHMARK(BM_IrrepMatrix)->RangeMultiplier(2)->Range(1, 16);

void BM_Intertwiner(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(su2rep::intertwiner(c, c, c));
}
BENCHMARK(BM_Intertwiner)->DenseRange(2, 8, 2);

void BM_Evaluate(benchmark::State& state) {
  const auto& g = tetrahedron();
  const int c = static_cast<int>(state.range(0));
  const coloring::SpinNetwork n(g, coloring::Coloring(std::vector<coloring::Color>(g.edge_count(), c)));
  const auto o = topology::find_orientation(g);
  const auto tensor = su2rep::network_tensor(n, o);
  su2rep::Rng rng(2);
  const auto t = su2rep::random_assignment(g.edge_count(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(su2rep::evaluate(tensor, t));
}
BENCHMARK(BM_Evaluate)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
