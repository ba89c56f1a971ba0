#include "gaugekit/diffusion.hpp"

#include <cmath>
#include <sstream>

#include "gaugekit/errors.hpp"

namespace gaugekit {

namespace {

void check_times(const std::vector<double>& times) {
  if (times.empty()) {
    throw invalid_input("diffusion: the time grid is empty");
  }
  double prev = 0.0;
  for (double t : times) {
    if (!std::isfinite(t) || t < 0.0) {
      throw invalid_input("diffusion: times must be finite and nonnegative");
    }
    if (t < prev) {
      throw invalid_input("diffusion: times must be nondecreasing");
    }
    prev = t;
  }
}

void record(DiffusionReport& rep, const GaugedLaplacian& L,
            const Section& limit, double t, const Section& x) {
  rep.times.push_back(t);
  rep.energies.push_back(dirichlet_energy(L, x));
  rep.dist_to_limit.push_back(z_norm(L.graph(), x - limit));
  rep.snapshots.push_back(x);
}

}  // namespace

DiffusionReport heat_eigen(const GaugedLaplacian& L, const Section& x0,
                           const std::vector<double>& times) {
  check_times(times);
  const Spectrum& sp = L.spectrum();
  const Section limit = project_to_kernel(L, x0);

  // Z-inner coefficients of x0 against the Z-orthonormal eigensections.
  std::vector<double> coeff(sp.eigensections.size());
  for (size_t r = 0; r < sp.eigensections.size(); ++r) {
    coeff[r] = inner_product_z(L.graph(), sp.eigensections[r], x0);
  }

  DiffusionReport rep;
  rep.backend = "eigen";
  for (double t : times) {
    if (t == 0.0) {
      // x(0) is the input itself; skip the basis reconstruction so the
      // first snapshot is bit-exact.
      record(rep, L, limit, t, x0);
      continue;
    }
    Section x = Section::Zero(L.node_count(), L.dim());
    for (size_t r = 0; r < sp.eigensections.size(); ++r) {
      x += (std::exp(-sp.eigenvalues(static_cast<Eigen::Index>(r)) * t) *
            coeff[r]) *
           sp.eigensections[r];
    }
    record(rep, L, limit, t, x);
  }
  return rep;
}

DiffusionReport heat_euler(const GaugedLaplacian& L, const Section& x0,
                           const std::vector<double>& times, double dt) {
  check_times(times);
  if (!(dt > 0.0) || dt >= 1.0) {
    std::ostringstream msg;
    msg << "heat_euler: dt = " << dt
        << " is outside (0, 1); explicit steps of 1 or more are unstable for "
           "a spectrum reaching 2";
    throw invalid_input(msg.str());
  }
  const Section limit = project_to_kernel(L, x0);

  DiffusionReport rep;
  rep.backend = "euler";
  Section x = x0;
  double reached = 0.0;
  for (double t : times) {
    const double span = t - reached;
    if (span > 0.0) {
      const long steps = static_cast<long>(std::ceil(span / dt));
      const double h = span / static_cast<double>(steps);
      for (long s = 0; s < steps; ++s) {
        x -= h * L.apply(x);
      }
      reached = t;
    }
    record(rep, L, limit, t, x);
  }
  return rep;
}

DiffusionReport heat_euler(const GaugedLaplacian& L, const Section& x0,
                           double t_max, double dt) {
  std::vector<double> times{0.0};
  if (t_max > 0.0) {
    times.push_back(t_max);
  } else if (t_max != 0.0) {
    throw invalid_input("heat_euler: t_max must be nonnegative");
  }
  return heat_euler(L, x0, times, dt);
}

}  // namespace gaugekit
