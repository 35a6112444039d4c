#pragma once

#include <optional>
#include <string>

#include "k3orders/lattice.hpp"

namespace k3orders {

/// True if matrix preserves the lattice pairing: M^T * G * M = G.
bool is_isometry(const Lattice& l, const IntMatrix& matrix);

/// Action of the cyclic group of the declared order on a lattice, given by
/// the matrix of a generator (columns = images of basis vectors).
///
/// Construction rejects non-isometries (NotAnIsometryError) and matrices
/// whose order does not match (WrongOrderError): matrix^order must be the
/// identity, and no smaller positive power may be.  The named constructor
/// `with_declared_order` relaxes minimality only, so a non-faithful action
/// (e.g. the trivial one) can still be studied as an action of Z/n.
class CyclicAction {
 public:
  CyclicAction(Lattice lattice, IntMatrix matrix, unsigned order);
  static CyclicAction with_declared_order(Lattice lattice, IntMatrix matrix,
                                          unsigned order);

  const Lattice& lattice() const { return lattice_; }
  const IntMatrix& matrix() const { return matrix_; }
  unsigned order() const { return order_; }

  IntVec apply(const IntVec& v) const { return matrix_ * v; }

 private:
  CyclicAction(Lattice lattice, IntMatrix matrix, unsigned order,
               bool require_minimal);

  Lattice lattice_;
  IntMatrix matrix_;
  unsigned order_ = 1;
};

/// An isometry defined only on an embedded sublattice, to be extended to the
/// whole target by acting as -1 on the orthogonal complement.
struct PartialIsometry {
  Embedding embedding;
  CyclicAction action;  // acts on embedding.source()
};

/// Outcome of the extension attempt.  On success, `matrix` is the ambient
/// witness and has been re-verified: it preserves the ambient form, squares
/// to the identity (for order 2), restricts to the given action on the
/// image, and negates the orthogonal complement.  On failure,
/// `failed_entry` pinpoints the first non-integral coefficient.
struct ExtensionResult {
  bool extends = false;
  IntMatrix matrix;
  struct FailedEntry {
    std::size_t row = 0, col = 0;
    Rat value;
  };
  std::optional<FailedEntry> failed_entry;
};

/// Extend embedding ∘ action ∘ embedding^-1 by -1 on the complement.  The
/// unique rational matrix doing so is computed exactly; it extends over the
/// integers iff every entry is integral.
ExtensionResult extends_to_ambient(const PartialIsometry& p);

/// Same computation on raw data: `images` has one column per sublattice
/// basis vector (ambient coordinates), `action` is the matrix on the
/// sublattice.  No form-preservation is assumed or checked, and no success
/// witness checks run; this lets deliberately broken inputs be probed.
ExtensionResult extend_by_negation(const Lattice& ambient,
                                   const IntMatrix& images,
                                   const IntMatrix& action);

/// Fixed sublattice {v : a(v) = v} with its induced form (saturated).
Sublattice fixed_sublattice(const CyclicAction& a);

/// Lattice with all pairings halved; the input must have an even Gram
/// matrix in the off-diagonal entries too (OddEntryError otherwise).
/// This is the integral form carried by a quotient surface when the
/// invariant classes are pulled back through a degree-2 cover.
Lattice halved_form(const Lattice& l);

/// Partial norm (1 + s + ... + s^(k-1)) v for the action's generator s.
IntVec partial_norm(const CyclicAction& a, const IntVec& v, unsigned k);

}  // namespace k3orders
