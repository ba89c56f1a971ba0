#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gaugekit/graph.hpp"

namespace gaugekit {

/// Bit vector over Z/2, packed into 64-bit words.
class Z2Vector {
 public:
  explicit Z2Vector(int bits) : bits_(bits), words_((static_cast<size_t>(bits) + 63) / 64, 0) {}

  int size() const { return bits_; }
  void set(int i) { words_[static_cast<size_t>(i) / 64] ^= (std::uint64_t{1} << (i % 64)); }
  bool get(int i) const {
    return (words_[static_cast<size_t>(i) / 64] >> (i % 64)) & 1u;
  }

  Z2Vector& operator^=(const Z2Vector& rhs) {
    for (size_t w = 0; w < words_.size(); ++w) words_[w] ^= rhs.words_[w];
    return *this;
  }

  bool any() const {
    for (const auto w : words_)
      if (w) return true;
    return false;
  }

  /// Index of the highest set bit, or -1 for the zero vector.
  int leading_bit() const;

 private:
  int bits_;
  std::vector<std::uint64_t> words_;
};

/**
 * Incremental Gaussian elimination over Z/2: maintains a set of vectors with
 * pairwise distinct leading bits. Used for ranks and for greedy independence
 * tests against a growing span.
 */
class Z2Basis {
 public:
  /// Reduces v against the basis. If a nonzero remainder survives, it joins
  /// the basis and the call returns true (v was independent).
  bool insert(Z2Vector v);

  /// True iff v is independent of the current span (no mutation).
  bool independent(Z2Vector v) const;

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  std::vector<Z2Vector> rows_;   // one per distinct leading bit
  std::vector<int> leading_;     // leading bit of each row
};

/// Sparse-by-column Z/2 matrix: `cols[j]` is the j-th column over `rows` bits.
struct Z2Matrix {
  int rows = 0;
  std::vector<Z2Vector> cols;

  int col_count() const { return static_cast<int>(cols.size()); }
};

/// Rank of a column collection by plain elimination.
int z2_rank(const Z2Matrix& m);

/**
 * Boundary operators of the clique 2-complex over Z/2:
 * ∂₁ (|ν| × |ε|) sends an edge to its two endpoints, and ∂₂ (|ε| × |L³|)
 * sends a 3-clique to its three boundary edges. ∂₁∂₂ = 0 always.
 * The triangle list used for ∂₂'s columns is returned alongside.
 */
struct BoundaryMatrices {
  Z2Matrix d1;
  Z2Matrix d2;
  std::vector<std::array<int, 3>> tris;
};

BoundaryMatrices boundary_matrices(const WeightedGraph& g);

/// Entrywise check that ∂₁∘∂₂ vanishes (boundary of a boundary).
bool boundaries_compose_to_zero(const BoundaryMatrices& b);

/**
 * A cycle basis of the first Z/2 homology group: simple cycles (vertex
 * sequences with the base point repeated at the end) whose edge-indicator
 * vectors are independent modulo im ∂₂. h1 = number of cycles.
 */
struct CycleBasis {
  std::vector<std::vector<int>> cycles;
  int h1 = 0;
};

/// Edge-indicator vector of a closed vertex sequence.
Z2Vector cycle_indicator(const WeightedGraph& g, const std::vector<int>& cycle);

/**
 * Computes a homology basis from the spanning tree's fundamental cycles:
 * h1 = (|ε| − N + 1) − rank(∂₂), and the basis greedily keeps each
 * fundamental cycle (in cotree insertion order) that is independent of
 * im ∂₂ plus the cycles kept so far. Fundamental cycles span the whole cycle
 * space, so exactly h1 of them survive.
 */
CycleBasis homology_basis(const WeightedGraph& g, const SpanningTree& t);

}  // namespace gaugekit
