#pragma once

#include <string>
#include <vector>

#include "gaugekit/laplacian.hpp"

namespace gaugekit {

// Default forward-Euler step; any dt in (0, 1) is stable for an operator
// with spectrum in [0, 2].
inline constexpr double kEulerDtDefault = 0.1;

// Trajectory of the heat flow dx/dt = -Lx sampled on a time grid.  Energies
// are Dirichlet energies of the snapshots; dist_to_limit measures, in the
// Z-weighted norm, the distance from each snapshot to the Z-orthogonal
// kernel projection of the initial section (the t -> infinity limit).
struct DiffusionReport {
  std::vector<double> times;
  std::vector<Section> snapshots;
  std::vector<double> energies;
  std::vector<double> dist_to_limit;
  std::string backend;
};

// Spectral evaluation x(t) = sum_r exp(-lambda_r t) <<phi_r, x0>>_Z phi_r.
// Exact up to the eigendecomposition; requires the dense backend (cap
// kDenseCap).  Times must be finite, nonnegative and nondecreasing.
DiffusionReport heat_eigen(const GaugedLaplacian& L, const Section& x0,
                           const std::vector<double>& times);

// Explicit forward-Euler marching x <- x - h L x, subdividing each interval
// between requested times into steps of size at most dt so the grid is hit
// exactly.  Throws invalid_input for dt outside (0, 1): steps of 1 or more
// are unstable at the spectral radius 2.
DiffusionReport heat_euler(const GaugedLaplacian& L, const Section& x0,
                           const std::vector<double>& times,
                           double dt = kEulerDtDefault);

// Convenience overload recording only t = 0 and t = t_max.
DiffusionReport heat_euler(const GaugedLaplacian& L, const Section& x0,
                           double t_max, double dt = kEulerDtDefault);

}  // namespace gaugekit
