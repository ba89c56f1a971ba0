#pragma once

#include <array>
#include <vector>

#include "gaugekit/homology.hpp"
#include "gaugekit/voltage.hpp"

namespace gaugekit {

// Per-term tolerance for the flatness / synchronizability thresholds; the
// applied threshold scales with the number of summed terms so per-term
// rounding noise cannot accumulate into a false positive.
inline constexpr double kTolYmPerTerm = 1e-8;

// Discrete Yang-Mills energy restricted to 3-cliques: the scalar holonomy
// of every triangle, traversed once in canonical ascending order.
struct TriangleBreakdown {
  double ym = 0.0;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> terms;
};

// Full energy report: the triangle energy, its extension over a homology
// cycle basis, and the threshold verdicts.  The tolerances actually applied
// are recorded so downstream consumers can reproduce the decision.
struct EnergyReport {
  double ym = 0.0;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> triangle_terms;

  double extended_ym = 0.0;
  std::vector<double> cycle_terms;
  CycleBasis basis;

  double tol_flat = 0.0;
  double tol_extended = 0.0;
  bool is_flat = false;
  bool is_synchronizable = false;
};

// Sum of scalar holonomies over all 3-cliques (i < j < k), each traversed
// as the loop (i, j, k, i); base-point and orientation invariance of the
// scalar holonomy makes the canonical choice harmless.  Terms are summed in
// lexicographic triangle order for reproducibility.
TriangleBreakdown yang_mills(const VoltageGraph& vg);

// Extended energy: yang_mills plus the scalar holonomies of the supplied
// homology basis cycles.  is_flat holds iff ym stays under kTolYmPerTerm per
// triangle; is_synchronizable iff the extended energy stays under
// kTolYmPerTerm per term (triangles and cycles together).  Throws
// invalid_input when a basis cycle is not a simple closed walk of the graph
// or the recorded h1 does not match the cycle count.
EnergyReport extended_yang_mills(const VoltageGraph& vg,
                                 const CycleBasis& basis);

// True iff the extended energy is invariant under the gauge action:
// |YM_e(xi.alpha) - YM_e(alpha)| <= 1e-9 (1 + YM_e(alpha)).
bool gauge_invariance_check(const VoltageGraph& vg, const Gauge& xi,
                            const CycleBasis& basis);

}  // namespace gaugekit
