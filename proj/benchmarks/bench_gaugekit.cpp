// Microbenchmarks for the hot paths: operator application, dense spectra,
// energies, transport, and the homology basis.  Instances are seeded so
// numbers are comparable across runs.

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "gaugekit/diffusion.hpp"
#include "gaugekit/graph.hpp"
#include "gaugekit/homology.hpp"
#include "gaugekit/laplacian.hpp"
#include "gaugekit/random.hpp"
#include "gaugekit/voltage.hpp"
#include "gaugekit/yang_mills.hpp"

namespace {

using namespace gaugekit;

VoltageGraph make_instance(int nodes, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const WeightedGraph g = random_connected_graph(nodes, 6.0, rng);
  return random_voltage(g, dim, VoltageMode::kHaar, rng);
}

Section make_section(const VoltageGraph& vg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Section x(vg.node_count(), vg.dim());
  for (int i = 0; i < vg.node_count(); ++i) {
    for (int j = 0; j < vg.dim(); ++j) x(i, j) = gauss(rng);
  }
  return x;
}

void BM_ApplyLaplacian(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  const int dim = static_cast<int>(state.range(1));
  const GaugedLaplacian L(make_instance(nodes, dim, 42));
  const Section x = make_section(L.voltage_graph(), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(L.apply(x));
  }
  state.SetItemsProcessed(state.iterations() * L.graph().edge_count());
}
BENCHMARK(BM_ApplyLaplacian)
    ->Args({64, 2})
    ->Args({64, 3})
    ->Args({256, 3})
    ->Args({1024, 3});

void BM_DenseSpectrum(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  const VoltageGraph vg = make_instance(nodes, 3, 42);
  for (auto _ : state) {
    GaugedLaplacian L(vg);  // fresh cache, so the solve happens every pass
    benchmark::DoNotOptimize(L.spectrum().eigenvalues.sum());
  }
}
BENCHMARK(BM_DenseSpectrum)->Arg(32)->Arg(64)->Arg(128);

void BM_TreeNullspace(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  std::mt19937_64 rng(43);
  const WeightedGraph g = random_connected_graph(nodes, 6.0, rng);
  const VoltageGraph vg =
      random_voltage(g, 3, VoltageMode::kSynchronizable, rng);
  const GaugedLaplacian L(vg);
  const SpanningTree tree = spanning_tree(g, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nullspace_spanning_tree(L, tree).dimension);
  }
}
BENCHMARK(BM_TreeNullspace)->Arg(64)->Arg(256)->Arg(1024);

void BM_YangMills(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const VoltageGraph vg = torus_voltage_graph(side, 5, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(yang_mills(vg).ym);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(triangles(vg.graph()).size()));
}
BENCHMARK(BM_YangMills)->Arg(8)->Arg(16)->Arg(32);

void BM_ExtendedYangMills(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const VoltageGraph vg = torus_voltage_graph(side, 5, true);
  const CycleBasis basis =
      homology_basis(vg.graph(), spanning_tree(vg.graph(), 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extended_yang_mills(vg, basis).extended_ym);
  }
}
BENCHMARK(BM_ExtendedYangMills)->Arg(8)->Arg(16);

void BM_NetVoltage(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  const VoltageGraph vg = make_instance(nodes, 3, 44);
  const SpanningTree tree = spanning_tree(vg.graph(), 0);
  // Transport along the tree path to the deepest node.
  int deep = 0;
  for (int i = 0; i < nodes; ++i) {
    if (tree_path_from_root(tree, i).size() >
        tree_path_from_root(tree, deep).size()) {
      deep = i;
    }
  }
  const std::vector<int> path = tree_path_from_root(tree, deep);
  for (auto _ : state) {
    benchmark::DoNotOptimize(net_voltage(vg, path).sum());
  }
}
BENCHMARK(BM_NetVoltage)->Arg(256)->Arg(1024);

void BM_HomologyBasis(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const WeightedGraph g = torus_voltage_graph(side, 5, true).graph();
  const SpanningTree tree = spanning_tree(g, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(homology_basis(g, tree).h1);
  }
}
BENCHMARK(BM_HomologyBasis)->Arg(8)->Arg(12)->Arg(16);

void BM_HeatEuler(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  const GaugedLaplacian L(make_instance(nodes, 3, 45));
  const Section x0 = make_section(L.voltage_graph(), 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        heat_euler(L, x0, std::vector<double>{1.0}, 0.01).snapshots.back());
  }
}
BENCHMARK(BM_HeatEuler)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
