#include <cmath>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "gaugekit/diffusion.hpp"
#include "gaugekit/errors.hpp"
#include "gaugekit/graph.hpp"
#include "gaugekit/laplacian.hpp"
#include "gaugekit/random.hpp"
#include "gaugekit/voltage.hpp"
#include "support/helpers.hpp"

using namespace gaugekit;

namespace {

double maxdiff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Gauge haar_gauge(int nodes, int dim, std::mt19937_64& rng) {
  std::vector<Eigen::MatrixXd> xi(static_cast<std::size_t>(nodes));
  for (auto& r : xi) r = sample_haar(dim, rng).matrix();
  return Gauge::from_rotations(std::move(xi));
}

// From-scratch scalar heat operator on the weighted graph: eigendecompose
// I - D^{-1/2} K D^{-1/2} and propagate f(t) = D^{-1/2} Q e^{-Lambda t} Q^T
// D^{1/2} f(0), column by column.
Eigen::MatrixXd scalar_heat_oracle(const WeightedGraph& g,
                                   const Eigen::MatrixXd& f0, double t) {
  const int n = g.node_count();
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd sqz(n);
  for (int i = 0; i < n; ++i) sqz(i) = std::sqrt(g.z(i));
  for (const Edge& ed : g.edges()) {
    const double coef = -ed.weight / (sqz(ed.tail) * sqz(ed.head));
    b(ed.tail, ed.head) = coef;
    b(ed.head, ed.tail) = coef;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  const Eigen::VectorXd decay = (-t * es.eigenvalues().array()).exp();
  const Eigen::MatrixXd propagator =
      sqz.cwiseInverse().asDiagonal() * es.eigenvectors() *
      decay.asDiagonal() * es.eigenvectors().transpose() *
      Eigen::MatrixXd(sqz.asDiagonal());
  return propagator * f0;
}

}  // namespace

TEST_CASE("heat flow starts at the initial section") {
  std::mt19937_64 rng(5301);
  const auto vg = random_voltage_graph(6, 3.0, 2, VoltageMode::kHaar, 11000);
  const GaugedLaplacian L(vg);
  const Section x0 = testkit::gaussian_matrix(6, 2, rng);

  const DiffusionReport rep = heat_eigen(L, x0, {0.0});
  REQUIRE(rep.times == std::vector<double>{0.0});
  REQUIRE(rep.snapshots.size() == 1);
  CHECK(maxdiff(rep.snapshots[0], x0) < 1e-10);
  CHECK(rep.backend == "eigen");
  CHECK(std::abs(rep.energies[0] - dirichlet_energy(L, x0)) < 1e-9);
}

TEST_CASE("time grids are validated") {
  const auto vg = random_voltage_graph(5, 3.0, 2, VoltageMode::kHaar, 11001);
  const GaugedLaplacian L(vg);
  const Section x0 = Section::Ones(5, 2);
  CHECK_THROWS_AS(heat_eigen(L, x0, {}), invalid_input);
  CHECK_THROWS_AS(heat_eigen(L, x0, {1.0, 0.5}), invalid_input);
  CHECK_THROWS_AS(heat_eigen(L, x0, {-1.0}), invalid_input);
  CHECK_THROWS_AS(heat_eigen(L, x0, {std::nan("")}), invalid_input);
  CHECK_THROWS_AS(heat_euler(L, x0, {0.0, 1.0}, 1.0), invalid_input);
  CHECK_THROWS_AS(heat_euler(L, x0, {0.0, 1.0}, 0.0), invalid_input);
  CHECK_THROWS_AS(heat_euler(L, x0, {0.0, 1.0}, -0.1), invalid_input);
  CHECK_THROWS_AS(heat_euler(L, x0, -2.0), invalid_input);
}

TEST_CASE("spectral heat flow matches the scalar oracle after gauging") {
  std::mt19937_64 rng(5302);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 4);
    const int d = 2 + static_cast<int>(rng() % 2);
    const auto g =
        WeightedGraph::build(n, testkit::random_edges(n, n, rng));
    const Gauge xi = haar_gauge(n, d, rng);
    std::vector<Eigen::MatrixXd> a;
    for (const Edge& ed : g.edges()) {
      a.push_back(xi.at(ed.tail).transpose() * xi.at(ed.head));
    }
    const GaugedLaplacian L(VoltageGraph::build(g, d, std::move(a)));
    const Section x0 = testkit::gaussian_matrix(n, d, rng);

    // Gauging by xi trivializes the voltage, where the flow is d scalar
    // flows; undo the gauge to get the prediction in the original frame.
    for (const double t : {0.3, 1.0, 4.0}) {
      const Section rep =
          heat_eigen(L, x0, std::vector<double>{t}).snapshots[0];
      const Eigen::MatrixXd gauged = scalar_heat_oracle(
          g, gauge_act_section(xi, x0), t);
      const Section expected =
          gauge_act_section(xi.inverse(), Section(gauged));
      CHECK(maxdiff(rep, expected) < 1e-9);
    }
  }
}

TEST_CASE("heat flow decays to the kernel projection at the spectral rate") {
  std::mt19937_64 rng(5303);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 4);
    const int d = 1 + static_cast<int>(rng() % 3);
    const auto mode = trial % 2 == 0 ? VoltageMode::kSynchronizable
                                     : VoltageMode::kHaar;
    const auto vg = random_voltage_graph(n, 3.0, d, mode, 11100 + trial);
    const GaugedLaplacian L(vg);
    const Section x0 = testkit::gaussian_matrix(n, d, rng);
    const Section limit = project_to_kernel(L, x0);
    const double mu = smallest_nonzero_eigenvalue(L.spectrum());
    const double start = z_norm(vg.graph(), x0 - limit);

    const DiffusionReport rep = heat_eigen(L, x0, {1.0, 5.0, 25.0});
    for (size_t k = 0; k < rep.times.size(); ++k) {
      CHECK(rep.dist_to_limit[k] <=
            std::exp(-mu * rep.times[k]) * start + 1e-8);
    }
    // Long-time limit: essentially the projection itself.
    const Section late =
        heat_eigen(L, x0, std::vector<double>{50.0 / mu}).snapshots[0];
    CHECK(z_norm(vg.graph(), late - limit) < 1e-8 * (1.0 + start));
  }
}

TEST_CASE("energies and distances are monotone along the flow") {
  std::mt19937_64 rng(5304);
  const auto vg = random_voltage_graph(7, 3.0, 2, VoltageMode::kHaar, 11200);
  const GaugedLaplacian L(vg);
  const Section x0 = testkit::gaussian_matrix(7, 2, rng);
  const std::vector<double> grid{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};

  for (const auto& rep :
       {heat_eigen(L, x0, grid), heat_euler(L, x0, grid, 0.05)}) {
    REQUIRE(rep.times.size() == grid.size());
    for (size_t k = 1; k < grid.size(); ++k) {
      CHECK(rep.energies[k] <= rep.energies[k - 1] + 1e-10);
      CHECK(rep.dist_to_limit[k] <= rep.dist_to_limit[k - 1] + 1e-10);
    }
  }
}

TEST_CASE("explicit Euler agrees with the spectral backend") {
  std::mt19937_64 rng(5305);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const int d = 1 + static_cast<int>(rng() % 3);
    const auto mode = trial % 2 == 0 ? VoltageMode::kHaar
                                     : VoltageMode::kSynchronizable;
    const auto vg = random_voltage_graph(n, 3.0, d, mode, 11300 + trial);
    const GaugedLaplacian L(vg);
    const Section x0 = testkit::gaussian_matrix(n, d, rng);

    const Section spectral =
        heat_eigen(L, x0, std::vector<double>{1.0}).snapshots[0];
    const DiffusionReport euler =
        heat_euler(L, x0, std::vector<double>{1.0}, 1e-3);
    CHECK(euler.backend == "euler");
    CHECK(maxdiff(euler.snapshots[0], spectral) <= 5e-3 * x0.norm());
  }
}

TEST_CASE("Euler leaves kernel sections stationary") {
  const auto vg =
      random_voltage_graph(6, 3.0, 3, VoltageMode::kSynchronizable, 11400);
  const GaugedLaplacian L(vg);
  REQUIRE(L.kernel().dimension == 3);
  const Section x0 = L.kernel().basis[0];

  // 10^4 steps of size 0.1: drift must stay at rounding level.
  const DiffusionReport rep =
      heat_euler(L, x0, std::vector<double>{1000.0}, 0.1);
  CHECK(maxdiff(rep.snapshots.back(), x0) < 1e-10);
  CHECK(rep.dist_to_limit.back() < 1e-9);
}

TEST_CASE("Euler lands exactly on the requested grid") {
  const auto vg = random_voltage_graph(5, 3.0, 1, VoltageMode::kTrivial, 11500);
  const GaugedLaplacian L(vg);
  const Section x0 = Section::Ones(5, 1) * 2.0;

  // dt does not divide the spans; the subdivision must still hit the grid.
  const DiffusionReport rep = heat_euler(L, x0, {0.0, 0.35, 1.0}, 0.3);
  REQUIRE(rep.times == std::vector<double>{0.0, 0.35, 1.0});
  // Constant sections are in the trivial kernel: nothing moves at all.
  CHECK(maxdiff(rep.snapshots.back(), x0) < 1e-12);

  const DiffusionReport single = heat_euler(L, x0, 0.0);
  REQUIRE(single.times == std::vector<double>{0.0});
  CHECK(maxdiff(single.snapshots[0], x0) == 0.0);
}

TEST_CASE("gauge covariance of the heat flow") {
  std::mt19937_64 rng(5306);
  const auto vg = random_voltage_graph(6, 3.0, 2, VoltageMode::kHaar, 11600);
  const Gauge xi = haar_gauge(6, 2, rng);
  const GaugedLaplacian L(vg);
  const GaugedLaplacian Lg(gauge_act_voltage(xi, vg));
  const Section x0 = testkit::gaussian_matrix(6, 2, rng);

  for (const double t : {0.5, 2.0}) {
    const Section a = heat_eigen(Lg, gauge_act_section(xi, x0),
                                 std::vector<double>{t})
                          .snapshots[0];
    const Section b = gauge_act_section(
        xi, heat_eigen(L, x0, std::vector<double>{t}).snapshots[0]);
    CHECK(maxdiff(a, b) < 1e-9);
  }
}

TEST_CASE("channel means are conserved only for the trivial torus voltage") {
  const auto flat = torus_voltage_graph(4, 1);
  const auto twisted = torus_voltage_graph(4, 5);
  const Section x0 = Section::Ones(16, 2);

  const Section xt_flat =
      heat_eigen(GaugedLaplacian(flat), x0, std::vector<double>{1.0})
          .snapshots[0];
  const Section xt_twist =
      heat_eigen(GaugedLaplacian(twisted), x0, std::vector<double>{1.0})
          .snapshots[0];

  // Unit weights make every Z_i equal, so the conserved Z-weighted sums are
  // proportional to the plain channel means.
  const Eigen::RowVectorXd m0 = x0.colwise().mean();
  CHECK((xt_flat.colwise().mean() - m0).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((xt_twist.colwise().mean() - m0).cwiseAbs().maxCoeff() > 1e-3);
}
