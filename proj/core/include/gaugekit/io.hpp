#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gaugekit/diffusion.hpp"
#include "gaugekit/voltage.hpp"
#include "gaugekit/yang_mills.hpp"

namespace gaugekit {

// Rotations read from files are accepted at this loose tolerance (outside
// tools carry rounding), then re-projected onto the rotation group.
inline constexpr double kTolLoad = 1e-6;

// In-memory form of a voltage-graph file: the graph-with-voltage plus
// whatever optional metadata the file carried.
struct VoltageGraphFile {
  VoltageGraph voltage;
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
};

// JSON schema:
//   {"dim": d, "nodes": N,
//    "edges": [{"from": i, "to": j, "weight": w,
//               "rotation": [d*d row-major entries of alpha_{from,to}]}],
//    "metadata": {"name": "...", "seed": 123}}          (metadata optional)
// Writing emits edges in storage order with "from" the stored tail, so a
// write/read round trip reproduces the graph exactly: weights bit-for-bit,
// rotations up to the final re-projection.
std::string write_voltage_graph_json(
    const VoltageGraph& vg,
    const std::optional<std::string>& name = std::nullopt,
    const std::optional<std::uint64_t>& seed = std::nullopt);
VoltageGraphFile read_voltage_graph_json(const std::string& text);

// Section files: {"dim": d, "values": [[row 0], ..., [row N-1]]}.
std::string write_section_json(const Section& x);
Section read_section_json(const std::string& text);

// Gauge files: {"dim": d, "nodes": N, "rotations": [d*d row-major per node]}.
std::string write_gauge_json(const Gauge& xi);
Gauge read_gauge_json(const std::string& text);

// Energy reports with the per-term arrays and the thresholds applied.
std::string write_energy_report_json(const EnergyReport& rep);

// Diffusion trajectory as CSV: header line
//   t,energy,dist_to_limit,x_<node>_<comp>,...
// then one row per snapshot, LF line endings, 17 significant digits.
std::string write_diffusion_csv(const DiffusionReport& rep);

// Whole-file helpers; failures to open or parse surface as invalid_input.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
VoltageGraphFile load_voltage_graph(const std::string& path);
Section load_section(const std::string& path);

}  // namespace gaugekit
