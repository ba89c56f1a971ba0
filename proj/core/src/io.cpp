#include "gaugekit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gaugekit/errors.hpp"

namespace gaugekit {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json rotation_to_json(const Eigen::MatrixXd& r) {
  json out = json::array();
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      out.push_back(r(i, j));
    }
  }
  return out;
}

Eigen::MatrixXd rotation_from_json(const json& arr, int dim,
                                   const std::string& where) {
  if (!arr.is_array() ||
      arr.size() != static_cast<size_t>(dim) * static_cast<size_t>(dim)) {
    throw invalid_input(where + ": rotation must be a flat row-major array "
                                "of dim*dim numbers");
  }
  Eigen::MatrixXd r(dim, dim);
  size_t k = 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const json& cell = arr[k++];
      if (!cell.is_number()) {
        throw invalid_input(where + ": rotation entries must be numbers");
      }
      r(i, j) = cell.get<double>();
    }
  }
  if (!validate_rotation(r, kTolLoad)) {
    std::ostringstream msg;
    msg << where << ": matrix is not a rotation at load tolerance "
        << kTolLoad;
    throw invalid_input(msg.str());
  }
  return project_to_rotation(r).matrix();
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& err) {
    throw invalid_input(std::string("malformed JSON: ") + err.what());
  }
}

int require_int(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) {
    throw invalid_input(std::string("missing or non-integer field \"") + key +
                        "\"");
  }
  return obj[key].get<int>();
}

}  // namespace

std::string write_voltage_graph_json(const VoltageGraph& vg,
                                     const std::optional<std::string>& name,
                                     const std::optional<std::uint64_t>& seed) {
  json out;
  out["dim"] = vg.dim();
  out["nodes"] = vg.node_count();
  json edges = json::array();
  const WeightedGraph& g = vg.graph();
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    json rec;
    rec["from"] = ed.tail;
    rec["to"] = ed.head;
    rec["weight"] = ed.weight;
    rec["rotation"] = rotation_to_json(vg.edge_rotation(e));
    edges.push_back(std::move(rec));
  }
  out["edges"] = std::move(edges);
  if (name || seed) {
    json meta;
    if (name) meta["name"] = *name;
    if (seed) meta["seed"] = *seed;
    out["metadata"] = std::move(meta);
  }
  return out.dump(2) + "\n";
}

VoltageGraphFile read_voltage_graph_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) {
    throw invalid_input("voltage graph file: top level must be an object");
  }
  const int dim = require_int(doc, "dim");
  const int nodes = require_int(doc, "nodes");
  if (dim < 1) {
    throw invalid_input("voltage graph file: dim must be positive");
  }
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    throw invalid_input("voltage graph file: missing \"edges\" array");
  }

  std::vector<std::tuple<int, int, double>> edge_list;
  std::vector<std::pair<bool, Eigen::MatrixXd>> raw;  // (from > to, alpha)
  int index = 0;
  for (const json& rec : doc["edges"]) {
    std::ostringstream wh;
    wh << "edge " << index;
    const std::string where = wh.str();
    if (!rec.is_object()) {
      throw invalid_input(where + ": edge records must be objects");
    }
    const int from = require_int(rec, "from");
    const int to = require_int(rec, "to");
    if (!rec.contains("weight") || !rec["weight"].is_number()) {
      throw invalid_input(where + ": missing numeric \"weight\"");
    }
    if (!rec.contains("rotation")) {
      throw invalid_input(where + ": missing \"rotation\"");
    }
    const std::string labeled =
        where + " (" + std::to_string(from) + "-" + std::to_string(to) + ")";
    edge_list.emplace_back(from, to, rec["weight"].get<double>());
    raw.emplace_back(from > to,
                     rotation_from_json(rec["rotation"], dim, labeled));
    ++index;
  }

  WeightedGraph g = WeightedGraph::build(nodes, edge_list);
  // The file stores alpha_{from,to}; flip to the canonical tail > head
  // orientation where the record was written the other way around.
  std::vector<Eigen::MatrixXd> alphas;
  alphas.reserve(raw.size());
  for (auto& [forward, m] : raw) {
    alphas.push_back(forward ? std::move(m)
                             : Eigen::MatrixXd(m.transpose()));
  }

  VoltageGraphFile file{VoltageGraph::build(g, dim, std::move(alphas)),
                        std::nullopt, std::nullopt};
  if (doc.contains("metadata")) {
    const json& meta = doc["metadata"];
    if (!meta.is_object()) {
      throw invalid_input("voltage graph file: metadata must be an object");
    }
    if (meta.contains("name")) {
      if (!meta["name"].is_string()) {
        throw invalid_input("voltage graph file: metadata.name must be a string");
      }
      file.name = meta["name"].get<std::string>();
    }
    if (meta.contains("seed")) {
      if (!meta["seed"].is_number_unsigned()) {
        throw invalid_input(
            "voltage graph file: metadata.seed must be a nonnegative integer");
      }
      file.seed = meta["seed"].get<std::uint64_t>();
    }
  }
  return file;
}

std::string write_section_json(const Section& x) {
  json out;
  out["dim"] = static_cast<int>(x.cols());
  json values = json::array();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      row.push_back(x(i, j));
    }
    values.push_back(std::move(row));
  }
  out["values"] = std::move(values);
  return out.dump(2) + "\n";
}

Section read_section_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) {
    throw invalid_input("section file: top level must be an object");
  }
  const int dim = require_int(doc, "dim");
  if (dim < 1) {
    throw invalid_input("section file: dim must be positive");
  }
  if (!doc.contains("values") || !doc["values"].is_array() ||
      doc["values"].empty()) {
    throw invalid_input("section file: missing nonempty \"values\" array");
  }
  const json& values = doc["values"];
  Section x(static_cast<Eigen::Index>(values.size()), dim);
  for (size_t i = 0; i < values.size(); ++i) {
    const json& row = values[i];
    if (!row.is_array() || row.size() != static_cast<size_t>(dim)) {
      std::ostringstream msg;
      msg << "section file: row " << i << " must hold exactly " << dim
          << " numbers";
      throw invalid_input(msg.str());
    }
    for (size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_number()) {
        throw invalid_input("section file: values must be numbers");
      }
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          row[j].get<double>();
    }
  }
  return x;
}

std::string write_gauge_json(const Gauge& xi) {
  json out;
  out["dim"] = xi.dim();
  out["nodes"] = xi.node_count();
  json rotations = json::array();
  for (int i = 0; i < xi.node_count(); ++i) {
    rotations.push_back(rotation_to_json(xi.at(i)));
  }
  out["rotations"] = std::move(rotations);
  return out.dump(2) + "\n";
}

Gauge read_gauge_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) {
    throw invalid_input("gauge file: top level must be an object");
  }
  const int dim = require_int(doc, "dim");
  const int nodes = require_int(doc, "nodes");
  if (dim < 1 || nodes < 1) {
    throw invalid_input("gauge file: dim and nodes must be positive");
  }
  if (!doc.contains("rotations") || !doc["rotations"].is_array() ||
      doc["rotations"].size() != static_cast<size_t>(nodes)) {
    throw invalid_input("gauge file: \"rotations\" must hold one matrix per node");
  }
  std::vector<Eigen::MatrixXd> rotations;
  rotations.reserve(static_cast<size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    std::ostringstream wh;
    wh << "gauge entry " << i;
    rotations.push_back(
        rotation_from_json(doc["rotations"][static_cast<size_t>(i)], dim,
                           wh.str()));
  }
  return Gauge::from_rotations(std::move(rotations));
}

std::string write_energy_report_json(const EnergyReport& rep) {
  json out;
  out["ym"] = rep.ym;
  json tris = json::array();
  for (const auto& [i, j, k] : rep.triangles) {
    tris.push_back(json::array({i, j, k}));
  }
  out["triangles"] = std::move(tris);
  out["triangle_terms"] = rep.triangle_terms;
  out["extended_ym"] = rep.extended_ym;
  out["cycle_terms"] = rep.cycle_terms;
  out["basis"] = {{"h1", rep.basis.h1}, {"cycles", rep.basis.cycles}};
  out["tol_flat"] = rep.tol_flat;
  out["tol_extended"] = rep.tol_extended;
  out["is_flat"] = rep.is_flat;
  out["is_synchronizable"] = rep.is_synchronizable;
  return out.dump(2) + "\n";
}

std::string write_diffusion_csv(const DiffusionReport& rep) {
  std::ostringstream out;
  out << "t,energy,dist_to_limit";
  if (!rep.snapshots.empty()) {
    for (Eigen::Index i = 0; i < rep.snapshots[0].rows(); ++i) {
      for (Eigen::Index j = 0; j < rep.snapshots[0].cols(); ++j) {
        out << ",x_" << i << "_" << j;
      }
    }
  }
  out << "\n";
  for (size_t k = 0; k < rep.times.size(); ++k) {
    out << fmt17(rep.times[k]) << "," << fmt17(rep.energies[k]) << ","
        << fmt17(rep.dist_to_limit[k]);
    const Section& x = rep.snapshots[k];
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out << "," << fmt17(x(i, j));
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw invalid_input("cannot read file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw invalid_input("cannot read file: " + path);
  }
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw invalid_input("cannot write file: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw invalid_input("cannot write file: " + path);
  }
}

VoltageGraphFile load_voltage_graph(const std::string& path) {
  const std::string text = read_text_file(path);  // already names the path
  try {
    return read_voltage_graph_json(text);
  } catch (const invalid_input& err) {
    throw invalid_input(path + ": " + err.what());
  }
}

Section load_section(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return read_section_json(text);
  } catch (const invalid_input& err) {
    throw invalid_input(path + ": " + err.what());
  }
}

}  // namespace gaugekit
