// Writes the committed files under fixtures/: small voltage graphs with a
// companion initial section each, plus reference diffusion CSVs on the grid
// {0, 0.5, 2.5, 25}.  Everything is seeded, so reruns reproduce the shipped
// files byte for byte.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "gaugekit/diffusion.hpp"
#include "gaugekit/graph.hpp"
#include "gaugekit/io.hpp"
#include "gaugekit/laplacian.hpp"
#include "gaugekit/random.hpp"
#include "gaugekit/rotation.hpp"
#include "gaugekit/voltage.hpp"

namespace {

using namespace gaugekit;

Eigen::MatrixXd rot3(const Eigen::Vector3d& axis, double theta) {
  const Eigen::Vector3d u = axis.normalized();
  Eigen::Matrix3d k;
  k << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
  return Eigen::Matrix3d::Identity() + std::sin(theta) * k +
         (1.0 - std::cos(theta)) * k * k;
}

Section gaussian_section(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Section x(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = gauss(rng);
  }
  return x;
}

// Voltage whose kernel is exactly one-dimensional: all rotations share the
// fixed axis u on cotree edges, so the section x_i = xi_i^T u is harmonic
// and, for generic angles, nothing else is.
VoltageGraph shared_axis_voltage(const WeightedGraph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::Vector3d axis = Eigen::Vector3d(0.3, -1.1, 0.7).normalized();
  std::vector<Eigen::MatrixXd> xi;
  for (int i = 0; i < g.node_count(); ++i) {
    xi.push_back(sample_haar(3, rng).matrix());
  }
  const SpanningTree tree = spanning_tree(g, 0);
  std::uniform_real_distribution<double> angle(0.4, 2.8);
  std::vector<Eigen::MatrixXd> alphas(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    Eigen::MatrixXd middle = Eigen::Matrix3d::Identity();
    if (!tree.in_tree[e]) middle = rot3(axis, angle(rng));
    alphas[e] = xi[ed.tail].transpose() * middle * xi[ed.head];
  }
  return VoltageGraph::build(g, 3, std::move(alphas));
}

struct Fixture {
  std::string stem;
  VoltageGraph vg;
  std::uint64_t seed;
};

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";

  std::vector<Fixture> fixtures;

  // Two nodes, one edge, identity voltage: the smallest spectrum oracle,
  // eigenvalues {0, 2} each with multiplicity d.
  fixtures.push_back(
      {"path_trivial",
       VoltageGraph::trivial(WeightedGraph::build(2, {{0, 1, 1.0}}), 2),
       11});

  // Random attachment tree with Haar SO(3) voltages; trees synchronize no
  // matter what the edge rotations are.
  {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> weight(0.5, 2.0);
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 1; i < 10; ++i) {
      std::uniform_int_distribution<int> pick(0, i - 1);
      edges.emplace_back(pick(rng), i, weight(rng));
    }
    WeightedGraph g = WeightedGraph::build(10, edges);
    fixtures.push_back({"tree_so3", random_voltage(g, 3, VoltageMode::kHaar, rng), 23});
  }

  // Shared-axis SO(3) construction: flat along the tree, a common rotation
  // axis on the chords, kernel dimension exactly one.
  {
    WeightedGraph g = random_connected_graph(9, 4.0, 37);
    fixtures.push_back({"so3_shared_axis", shared_axis_voltage(g, 37), 37});
  }

  // Fully synchronizable SO(3) instance: alpha_{ij} = xi_i^T xi_j for a
  // hidden gauge, kernel dimension d = 3.
  fixtures.push_back(
      {"so3_synchronizable",
       random_voltage_graph(12, 4.0, 3, VoltageMode::kSynchronizable, 61), 61});

  // Triangulated 8x8 torus with an order-5 rotation on the horizontal
  // wrap-around edges: flat but not synchronizable, h1 = 2.
  fixtures.push_back({"torus_8x8_order5", torus_voltage_graph(8, 5, true), 5});

  const std::vector<double> grid{0.0, 0.5, 2.5, 25.0};
  for (const Fixture& f : fixtures) {
    write_text_file(dir + "/" + f.stem + ".json",
                    write_voltage_graph_json(f.vg, f.stem, f.seed));

    const Section x0 =
        gaussian_section(f.vg.node_count(), f.vg.dim(), 1000 + f.seed);
    write_text_file(dir + "/" + f.stem + ".x0.json", write_section_json(x0));

    // Compute the reference trajectory from the files just written, not the
    // in-memory objects, so the CSV matches what a consumer of the shipped
    // fixtures reproduces (loading re-projects the rotations).
    const VoltageGraphFile reloaded =
        load_voltage_graph(dir + "/" + f.stem + ".json");
    const GaugedLaplacian L(reloaded.voltage);
    const DiffusionReport rep =
        heat_eigen(L, load_section(dir + "/" + f.stem + ".x0.json"), grid);
    write_text_file(dir + "/golden/" + f.stem + "_diffusion.csv",
                    write_diffusion_csv(rep));
    std::cout << f.stem << ": N=" << f.vg.node_count() << " d=" << f.vg.dim()
              << " |E|=" << f.vg.edge_count() << "\n";
  }
  return 0;
}
