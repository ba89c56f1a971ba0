#pragma once

#include <cstdint>
#include <random>

#include "gaugekit/graph.hpp"
#include "gaugekit/voltage.hpp"

namespace gaugekit {

// How to fill in the edge rotations of a generated instance.
enum class VoltageMode {
  kTrivial,         // identity on every edge
  kHaar,            // independent Haar-random rotations
  kSynchronizable,  // alpha_{ij} = xi_i^T xi_j for hidden Haar-random xi
};

// Connected random graph on `nodes` vertices whose edge count approximates
// `avg_degree * nodes / 2`: a random attachment tree plus uniformly sampled
// chords, with weights drawn uniformly from [0.5, 2).  Deterministic given
// the generator state.
WeightedGraph random_connected_graph(int nodes, double avg_degree,
                                     std::mt19937_64& rng);
WeightedGraph random_connected_graph(int nodes, double avg_degree,
                                     std::uint64_t seed);

// Voltage over an existing graph in the requested mode.
VoltageGraph random_voltage(const WeightedGraph& g, int dim, VoltageMode mode,
                            std::mt19937_64& rng);
VoltageGraph random_voltage(const WeightedGraph& g, int dim, VoltageMode mode,
                            std::uint64_t seed);

// Convenience: random_connected_graph + random_voltage in one call.
VoltageGraph random_voltage_graph(int nodes, double avg_degree, int dim,
                                  VoltageMode mode, std::uint64_t seed);

// Triangulated torus instance on side x side nodes (side >= 3), dim = 2,
// unit weights.  Node (r, c) has index side*r + c; every node emits a
// rightward, a downward, and (when `diagonals` is set) a down-right edge,
// all indices wrapping around.  Transport by one step rightward or downward
// multiplies by the planted rotation alpha0 = rot(2 pi / order), a diagonal
// step by alpha0^2, so every grid cell's triangles carry zero net rotation.
// The two wrap-around loops still pick up alpha0^side, which makes the
// instance flat but non-synchronizable whenever side is not a multiple of
// `order` (and side >= 4, so that no wrap loop is itself a triangle).
VoltageGraph torus_voltage_graph(int side, int order, bool diagonals = true);

}  // namespace gaugekit
