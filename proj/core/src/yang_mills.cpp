#include "gaugekit/yang_mills.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>

#include "gaugekit/errors.hpp"

namespace gaugekit {

TriangleBreakdown yang_mills(const VoltageGraph& vg) {
  TriangleBreakdown out;
  out.triangles = triangles(vg.graph());
  out.terms.reserve(out.triangles.size());
  for (const auto& [i, j, k] : out.triangles) {
    const double term = scalar_holonomy(vg, {i, j, k, i});
    out.terms.push_back(term);
    out.ym += term;
  }
  return out;
}

EnergyReport extended_yang_mills(const VoltageGraph& vg,
                                 const CycleBasis& basis) {
  if (basis.h1 != static_cast<int>(basis.cycles.size())) {
    std::ostringstream msg;
    msg << "basis error: h1 = " << basis.h1 << " but " << basis.cycles.size()
        << " cycles were supplied";
    throw invalid_input(msg.str());
  }

  EnergyReport rep;
  TriangleBreakdown tri = yang_mills(vg);
  rep.ym = tri.ym;
  rep.triangles = std::move(tri.triangles);
  rep.triangle_terms = std::move(tri.terms);

  rep.basis = basis;
  rep.cycle_terms.reserve(basis.cycles.size());
  rep.extended_ym = rep.ym;
  for (std::size_t c = 0; c < basis.cycles.size(); ++c) {
    double term = 0.0;
    try {
      // scalar_holonomy re-validates the walk: closed, consecutively
      // adjacent, interior vertices pairwise distinct.
      term = scalar_holonomy(vg, basis.cycles[c]);
    } catch (const invalid_input& err) {
      std::ostringstream msg;
      msg << "basis error at cycle " << c << ": " << err.what();
      throw invalid_input(msg.str());
    }
    rep.cycle_terms.push_back(term);
    rep.extended_ym += term;
  }

  rep.tol_flat =
      kTolYmPerTerm * static_cast<double>(rep.triangle_terms.size());
  rep.tol_extended =
      kTolYmPerTerm *
      static_cast<double>(rep.triangle_terms.size() + rep.cycle_terms.size());
  rep.is_flat = rep.ym <= rep.tol_flat;
  // The conjunction keeps "synchronizable implies flat" true even right at
  // the threshold boundary, where the two scaled tolerances differ.
  rep.is_synchronizable =
      rep.is_flat && rep.extended_ym <= rep.tol_extended;
  return rep;
}

bool gauge_invariance_check(const VoltageGraph& vg, const Gauge& xi,
                            const CycleBasis& basis) {
  const double before = extended_yang_mills(vg, basis).extended_ym;
  const double after =
      extended_yang_mills(gauge_act_voltage(xi, vg), basis).extended_ym;
  return std::abs(after - before) <= 1e-9 * (1.0 + before);
}

}  // namespace gaugekit
