#include "gaugekit/homology.hpp"

#include <bit>
#include <string>

#include "gaugekit/errors.hpp"

namespace gaugekit {

int Z2Vector::leading_bit() const {
  for (size_t w = words_.size(); w-- > 0;) {
    if (words_[w]) {
      return static_cast<int>(w) * 64 + 63 - std::countl_zero(words_[w]);
    }
  }
  return -1;
}

bool Z2Basis::insert(Z2Vector v) {
  for (;;) {
    const int lead = v.leading_bit();
    if (lead < 0) return false;
    int hit = -1;
    for (size_t r = 0; r < rows_.size(); ++r) {
      if (leading_[r] == lead) {
        hit = static_cast<int>(r);
        break;
      }
    }
    if (hit < 0) {
      rows_.push_back(std::move(v));
      leading_.push_back(lead);
      return true;
    }
    v ^= rows_[static_cast<size_t>(hit)];
  }
}

bool Z2Basis::independent(Z2Vector v) const {
  for (;;) {
    const int lead = v.leading_bit();
    if (lead < 0) return false;
    int hit = -1;
    for (size_t r = 0; r < rows_.size(); ++r) {
      if (leading_[r] == lead) {
        hit = static_cast<int>(r);
        break;
      }
    }
    if (hit < 0) return true;
    v ^= rows_[static_cast<size_t>(hit)];
  }
}

int z2_rank(const Z2Matrix& m) {
  Z2Basis basis;
  for (const auto& c : m.cols) basis.insert(c);
  return basis.rank();
}

BoundaryMatrices boundary_matrices(const WeightedGraph& g) {
  BoundaryMatrices b;
  b.d1.rows = g.node_count();
  b.d1.cols.reserve(static_cast<size_t>(g.edge_count()));
  for (const Edge& e : g.edges()) {
    Z2Vector col(g.node_count());
    col.set(e.tail);
    col.set(e.head);
    b.d1.cols.push_back(std::move(col));
  }
  b.tris = triangles(g);
  b.d2.rows = g.edge_count();
  b.d2.cols.reserve(b.tris.size());
  for (const auto& [i, j, k] : b.tris) {
    Z2Vector col(g.edge_count());
    col.set(g.edge_between(i, j));
    col.set(g.edge_between(j, k));
    col.set(g.edge_between(i, k));
    b.d2.cols.push_back(std::move(col));
  }
  return b;
}

bool boundaries_compose_to_zero(const BoundaryMatrices& b) {
  for (const auto& tri_col : b.d2.cols) {
    Z2Vector image(b.d1.rows);
    for (int e = 0; e < b.d2.rows; ++e) {
      if (tri_col.get(e)) image ^= b.d1.cols[static_cast<size_t>(e)];
    }
    if (image.any()) return false;
  }
  return true;
}

Z2Vector cycle_indicator(const WeightedGraph& g, const std::vector<int>& cycle) {
  if (cycle.size() < 2 || cycle.front() != cycle.back()) {
    throw invalid_input("cycle indicator needs a closed vertex sequence");
  }
  Z2Vector v(g.edge_count());
  for (size_t s = 0; s + 1 < cycle.size(); ++s) {
    const int e = g.edge_between(cycle[s], cycle[s + 1]);
    if (e < 0) {
      throw invalid_input("cycle visits non-adjacent vertices " + std::to_string(cycle[s]) +
                          " and " + std::to_string(cycle[s + 1]));
    }
    v.set(e);
  }
  return v;
}

CycleBasis homology_basis(const WeightedGraph& g, const SpanningTree& t) {
  const BoundaryMatrices b = boundary_matrices(g);

  Z2Basis span;  // grows from im ∂₂ to im ∂₂ + chosen cycles
  for (const auto& c : b.d2.cols) span.insert(c);
  const int rank_d2 = span.rank();

  CycleBasis basis;
  basis.h1 = (g.edge_count() - g.node_count() + 1) - rank_d2;
  for (int e : t.cotree_edges) {
    if (static_cast<int>(basis.cycles.size()) == basis.h1) break;
    std::vector<int> cycle = fundamental_cycle(g, t, e);
    if (span.insert(cycle_indicator(g, cycle))) {
      basis.cycles.push_back(std::move(cycle));
    }
  }
  // Fundamental cycles span the entire cycle space ker ∂₁ ⊇ im ∂₂, so the
  // greedy pass always finds h1 independent ones.
  if (static_cast<int>(basis.cycles.size()) != basis.h1) {
    throw numeric_error("homology basis construction lost cycles (internal invariant)");
  }
  return basis;
}

}  // namespace gaugekit
