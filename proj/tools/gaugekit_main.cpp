#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaugekit/diffusion.hpp"
#include "gaugekit/errors.hpp"
#include "gaugekit/graph.hpp"
#include "gaugekit/homology.hpp"
#include "gaugekit/io.hpp"
#include "gaugekit/laplacian.hpp"
#include "gaugekit/random.hpp"
#include "gaugekit/voltage.hpp"
#include "gaugekit/yang_mills.hpp"

namespace {

using nlohmann::json;
using namespace gaugekit;

// Shared across subcommands: decision tolerance, output target, format.
struct GlobalOpts {
  double tol = 1e-8;
  std::string out = "-";
  std::string format = "json";
};

void emit(const GlobalOpts& opts, const std::string& text) {
  if (opts.out == "-" || opts.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(opts.out, text);
  }
}

json cycles_to_json(const std::vector<std::vector<int>>& cycles) {
  json arr = json::array();
  for (const auto& c : cycles) arr.push_back(c);
  return arr;
}

int cmd_analyze(const std::string& graph_path, const GlobalOpts& opts) {
  const VoltageGraphFile file = load_voltage_graph(graph_path);
  const VoltageGraph& vg = file.voltage;
  const SpanningTree tree = spanning_tree(vg.graph(), 0);
  const CycleBasis basis = homology_basis(vg.graph(), tree);
  const EnergyReport energy = extended_yang_mills(vg, basis);
  const GaugedLaplacian L(vg);
  const Nullspace kernel = nullspace_spanning_tree(L, tree);

  // Decision thresholds scale per term with the requested tolerance.
  const double tol_flat =
      opts.tol * static_cast<double>(energy.triangle_terms.size());
  const double tol_ext =
      opts.tol * static_cast<double>(energy.triangle_terms.size() +
                                     energy.cycle_terms.size());
  const bool is_flat = energy.ym <= tol_flat;
  const bool is_sync = is_flat && energy.extended_ym <= tol_ext;

  json rep;
  rep["N"] = vg.node_count();
  rep["edges"] = vg.edge_count();
  rep["d"] = vg.dim();
  rep["h1"] = basis.h1;
  rep["ym"] = energy.ym;
  rep["extended_ym"] = energy.extended_ym;
  rep["is_flat"] = is_flat;
  rep["is_synchronizable"] = is_sync;
  rep["kernel_dim"] = kernel.dimension;
  if (L.total_dim() <= kDenseCap) {
    const Spectrum& sp = L.spectrum();
    rep["spectrum_extrema"] = {
        {"min", sp.eigenvalues(0)},
        {"max", sp.eigenvalues(sp.eigenvalues.size() - 1)}};
  } else {
    rep["spectrum_extrema"] = nullptr;
  }
  if (file.name) rep["name"] = *file.name;
  emit(opts, rep.dump(2) + "\n");
  return 0;
}

int cmd_diffuse(const std::string& graph_path, const std::string& section_path,
                double t_max, int snapshots, const std::string& method,
                double dt, const std::vector<double>& explicit_times,
                const GlobalOpts& opts) {
  if (opts.format != "csv") {
    throw invalid_input("diffuse writes CSV time series; use --format csv");
  }
  const VoltageGraphFile file = load_voltage_graph(graph_path);
  const Section x0 = load_section(section_path);
  const GaugedLaplacian L(file.voltage);

  std::vector<double> times;
  if (!explicit_times.empty()) {
    times = explicit_times;
    if (!std::is_sorted(times.begin(), times.end())) {
      throw invalid_input("--times must be nondecreasing");
    }
  } else if (t_max < 0.0) {
    throw invalid_input("--t-max must be nonnegative");
  } else if (t_max == 0.0) {
    times = {0.0};
  } else {
    if (snapshots < 2) {
      throw invalid_input("--snapshots must be at least 2 when t-max > 0");
    }
    for (int k = 0; k < snapshots; ++k) {
      times.push_back(t_max * static_cast<double>(k) /
                      static_cast<double>(snapshots - 1));
    }
  }

  DiffusionReport rep;
  if (method == "eigen") {
    rep = heat_eigen(L, x0, times);
  } else if (method == "euler") {
    rep = heat_euler(L, x0, times, dt);
  } else {
    throw invalid_input("--method must be eigen or euler");
  }
  emit(opts, write_diffusion_csv(rep));
  return 0;
}

int cmd_sync(const std::string& graph_path, const std::string& gauge_out,
             const GlobalOpts& opts) {
  const VoltageGraphFile file = load_voltage_graph(graph_path);
  const VoltageGraph& vg = file.voltage;
  const SpanningTree tree = spanning_tree(vg.graph(), 0);
  const std::optional<Gauge> gauge = synchronize(vg, tree, opts.tol);

  json rep;
  if (gauge) {
    rep["synchronizable"] = true;
    rep["gauge"] = json::parse(write_gauge_json(*gauge));
    if (!gauge_out.empty()) {
      write_text_file(gauge_out, write_gauge_json(*gauge));
    }
  } else {
    rep["synchronizable"] = false;

    // Cotree edges whose gauged rotation stays away from the identity.
    const TreeGauge tg = tree_gauge(vg, tree);
    json obstructed_edges = json::array();
    for (const int e : tree.cotree_edges) {
      const Eigen::MatrixXd defect =
          tg.gauged.edge_rotation(e) -
          Eigen::MatrixXd::Identity(vg.dim(), vg.dim());
      const double dev = defect.cwiseAbs().maxCoeff();
      if (dev > opts.tol) {
        const Edge& ed = vg.graph().edge(e);
        obstructed_edges.push_back({{"edge", e},
                                    {"from", ed.tail},
                                    {"to", ed.head},
                                    {"defect", dev}});
      }
    }
    rep["obstructed_cotree_edges"] = std::move(obstructed_edges);

    const CycleBasis basis = homology_basis(vg.graph(), tree);
    json cycles = json::array();
    int obstructed_count = 0;
    for (const auto& cyc : basis.cycles) {
      const double hol = scalar_holonomy(vg, cyc);
      const bool obstructed = hol > opts.tol;
      if (obstructed) ++obstructed_count;
      cycles.push_back({{"cycle", cyc},
                        {"scalar_holonomy", hol},
                        {"obstructed", obstructed}});
    }
    rep["basis_cycles"] = std::move(cycles);
    rep["obstructed_cycle_count"] = obstructed_count;
  }
  emit(opts, rep.dump(2) + "\n");
  return 0;
}

int cmd_spectrum(const std::string& graph_path, int count,
                 const GlobalOpts& opts) {
  const VoltageGraphFile file = load_voltage_graph(graph_path);
  const GaugedLaplacian L(file.voltage);
  const Spectrum& sp = L.spectrum();  // throws past the dense cap

  Eigen::Index take = sp.eigenvalues.size();
  if (count > 0) {
    take = std::min<Eigen::Index>(take, count);
  }
  json rep;
  json vals = json::array();
  for (Eigen::Index i = 0; i < take; ++i) vals.push_back(sp.eigenvalues(i));
  rep["eigenvalues"] = std::move(vals);
  rep["total"] = sp.eigenvalues.size();

  bool has_gap = false;
  for (Eigen::Index i = 0; i < sp.eigenvalues.size(); ++i) {
    if (sp.eigenvalues(i) > opts.tol) {
      rep["smallest_nonzero"] = sp.eigenvalues(i);
      has_gap = true;
      break;
    }
  }
  if (!has_gap) rep["smallest_nonzero"] = nullptr;
  emit(opts, rep.dump(2) + "\n");
  return 0;
}

int cmd_homology(const std::string& graph_path, const GlobalOpts& opts) {
  const VoltageGraphFile file = load_voltage_graph(graph_path);
  const WeightedGraph& g = file.voltage.graph();
  const CycleBasis basis = homology_basis(g, spanning_tree(g, 0));
  json rep;
  rep["h1"] = basis.h1;
  rep["cycles"] = cycles_to_json(basis.cycles);
  emit(opts, rep.dump(2) + "\n");
  return 0;
}

int cmd_random(int nodes, double degree, int dim, std::uint64_t seed,
               const std::string& mode, int order, const GlobalOpts& opts) {
  if (nodes <= 0 || dim <= 0 || degree <= 0.0) {
    throw invalid_input("--nodes, --degree and --dim must be positive");
  }

  std::optional<VoltageGraph> vg;
  if (mode == "torus") {
    const int side = static_cast<int>(std::llround(std::sqrt(
        static_cast<double>(nodes))));
    if (side * side != nodes || side < 3) {
      throw invalid_input(
          "torus mode needs --nodes to be a perfect square >= 9");
    }
    if (dim != 2) {
      throw invalid_input("torus mode is a 2D construction; use --dim 2");
    }
    const int deg = static_cast<int>(std::llround(degree));
    if (static_cast<double>(deg) != degree || (deg != 4 && deg != 6)) {
      throw invalid_input(
          "torus mode supports --degree 4 (grid) or 6 (triangulated grid)");
    }
    vg = torus_voltage_graph(side, order, deg == 6);
  } else if (mode == "trivial" || mode == "haar" || mode == "synchronizable") {
    const VoltageMode m = mode == "trivial" ? VoltageMode::kTrivial
                          : mode == "haar"  ? VoltageMode::kHaar
                                            : VoltageMode::kSynchronizable;
    vg = random_voltage_graph(nodes, degree, dim, m, seed);
  } else {
    throw invalid_input(
        "--mode must be one of trivial, haar, synchronizable, torus");
  }
  emit(opts, write_voltage_graph_json(*vg, mode, seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gauge-equivariant graph signal toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --tol/--out/--format after the subcommand too

  GlobalOpts opts;
  app.add_option("--tol", opts.tol, "decision tolerance")
      ->capture_default_str();
  app.add_option("--out", opts.out, "output path, - for stdout")
      ->capture_default_str();
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::string graph_path;
  std::string section_path;
  std::string gauge_out;
  std::string method = "eigen";
  std::string mode = "haar";
  double t_max = 1.0;
  double dt = kEulerDtDefault;
  int snapshots = 11;
  int count = 0;
  int nodes = 12;
  double degree = 4.0;
  int dim = 2;
  int order = 5;
  std::uint64_t seed = 0;
  std::vector<double> explicit_times;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "summary report: counts, homology, energies, kernel");
  analyze->add_option("graph", graph_path, "voltage graph JSON file")
      ->required();

  CLI::App* diffuse =
      app.add_subcommand("diffuse", "run the heat flow, write CSV");
  diffuse->add_option("graph", graph_path, "voltage graph JSON file")
      ->required();
  diffuse->add_option("section", section_path, "initial section JSON file")
      ->required();
  diffuse->add_option("--t-max", t_max, "end time")->capture_default_str();
  diffuse->add_option("--snapshots", snapshots, "rows on the uniform grid")
      ->capture_default_str();
  diffuse->add_option("--times", explicit_times,
                      "explicit time grid (overrides --t-max/--snapshots)")
      ->delimiter(',');
  diffuse->add_option("--method", method, "eigen or euler")
      ->check(CLI::IsMember({"eigen", "euler"}))
      ->capture_default_str();
  diffuse->add_option("--dt", dt, "euler step bound")->capture_default_str();

  CLI::App* sync = app.add_subcommand(
      "sync", "find a synchronizing gauge or report obstructions");
  sync->add_option("graph", graph_path, "voltage graph JSON file")->required();
  sync->add_option("--gauge-out", gauge_out,
                   "also write the bare gauge file here on success");

  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "eigenvalues of the gauged Laplacian");
  spectrum_cmd->add_option("graph", graph_path, "voltage graph JSON file")
      ->required();
  spectrum_cmd->add_option("--count", count,
                           "emit only the smallest k eigenvalues");

  CLI::App* homology =
      app.add_subcommand("homology", "first homology rank and cycle basis");
  homology->add_option("graph", graph_path, "voltage graph JSON file")
      ->required();

  CLI::App* random_cmd =
      app.add_subcommand("random", "generate a voltage graph file");
  random_cmd->add_option("--nodes", nodes, "node count")
      ->capture_default_str();
  random_cmd->add_option("--degree", degree, "target average degree")
      ->capture_default_str();
  random_cmd->add_option("--dim", dim, "rotation dimension")
      ->capture_default_str();
  random_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  random_cmd
      ->add_option("--mode", mode, "trivial | haar | synchronizable | torus")
      ->capture_default_str();
  random_cmd->add_option("--order", order, "torus rotation order")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // CLI11's own exit codes vary; fold anything non-help into "invalid
    // input" for a stable scripting contract.
    return code == 0 ? 0 : 2;
  }

  try {
    if (!(opts.tol > 0.0)) {
      throw invalid_input("--tol must be positive");
    }
    if (analyze->parsed()) return cmd_analyze(graph_path, opts);
    if (diffuse->parsed()) {
      return cmd_diffuse(graph_path, section_path, t_max, snapshots, method,
                         dt, explicit_times, opts);
    }
    if (sync->parsed()) return cmd_sync(graph_path, gauge_out, opts);
    if (spectrum_cmd->parsed()) return cmd_spectrum(graph_path, count, opts);
    if (homology->parsed()) return cmd_homology(graph_path, opts);
    if (random_cmd->parsed()) {
      return cmd_random(nodes, degree, dim, seed, mode, order, opts);
    }
    return 2;
  } catch (const invalid_input& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 1;
  }
}
