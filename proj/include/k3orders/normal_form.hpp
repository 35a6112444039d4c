#pragma once

#include <optional>
#include <vector>

#include "k3orders/matrix.hpp"

namespace k3orders {

/// Smith normal form: u * m * v = d with u, v unimodular and d diagonal,
/// non-negative, each diagonal entry dividing the next; zeros come last.
struct SnfResult {
  IntMatrix u, d, v;
  /// Diagonal of d, length min(rows, cols).
  IntVec diagonal() const;
  /// Number of nonzero diagonal entries.
  std::size_t rank() const;
};

SnfResult smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form: u * m = h with u unimodular, h upper
/// staircase, pivots positive, entries above each pivot reduced into
/// [0, pivot).
struct HnfResult {
  IntMatrix h, u;
};

HnfResult hermite_normal_form(const IntMatrix& m);

/// Basis of the saturated integer kernel {x : m * x = 0}; the basis vectors
/// span a primitive sublattice (every rational kernel vector with integer
/// entries is an integer combination of them).
std::vector<IntVec> integer_kernel(const IntMatrix& m);

/// One integral solution of m * x = b, if any exists.
std::optional<IntVec> solve_integral(const IntMatrix& m, const IntVec& b);

/// Signed determinant via fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& m);

/// True if m is square with determinant +1 or -1.
bool is_unimodular(const IntMatrix& m);

/// Exact inverse of a unimodular integer matrix (throws if not unimodular).
IntMatrix inverse_unimodular(const IntMatrix& m);

/// Row span of a's rows equals row span of b's rows (compared via HNF, so
/// independent of basis choice and ordering).
bool same_row_span(const IntMatrix& a, const IntMatrix& b);

}  // namespace k3orders
