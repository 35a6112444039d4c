#pragma once

#include "k3orders/action.hpp"

namespace k3orders {

/// Norm element 1 + s + ... + s^(order-1) as a matrix.
IntMatrix norm_matrix(const CyclicAction& a);

/// First cohomology of the cyclic group acting on the lattice, together
/// with the machinery needed to do arithmetic with cocycle classes:
/// H^1 = ker(norm) / im(1 - s).
class CocycleClasses {
 public:
  explicit CocycleClasses(const CyclicAction& a);

  const CyclicAction& action() const { return action_; }
  /// The group in invariant-factor form; generators are honest lattice
  /// vectors (cocycles), one per factor, already reduced to canonical
  /// representatives.
  const FinAbGroup& group() const { return group_; }
  /// Saturated basis of ker(norm).
  const std::vector<IntVec>& kernel_basis() const { return kernel_basis_; }

  bool is_cocycle(const IntVec& v) const;

  /// Coordinates of a cocycle in the kernel basis (throws NotACocycleError).
  IntVec kernel_coordinates(const IntVec& v) const;

  /// Canonical representative of the class of v modulo im(1 - s): every
  /// class has exactly one, so equality of representatives decides equality
  /// of classes.
  IntVec reduce(const IntVec& v) const;

  /// Do the classes of the given cocycles generate the whole group?
  bool covers(const std::vector<IntVec>& cocycles) const;

 private:
  CyclicAction action_;
  IntMatrix norm_;
  IntMatrix kernel_matrix_;             // columns = kernel basis
  std::vector<IntVec> kernel_basis_;
  IntMatrix coord_matrix_;              // im(1-s) in kernel coordinates
  IntMatrix image_hnf_;                 // HNF basis of that image lattice
  FinAbGroup group_;
};

/// Just the group.
FinAbGroup h1(const CyclicAction& a);

/// Same cohomology class: v - w lies in im(1 - s).  Both inputs must be
/// cocycles (norm zero), else NotACocycleError.
bool same_class(const CyclicAction& a, const IntVec& v, const IntVec& w);

}  // namespace k3orders
