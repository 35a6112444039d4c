#pragma once

#include <string>
#include <vector>

#include "k3orders/matrix.hpp"
#include "k3orders/normal_form.hpp"
#include "k3orders/signature.hpp"

namespace k3orders {

/// Free abelian group of finite rank with an integer-valued symmetric
/// bilinear form, given by its Gram matrix in a fixed basis.  Optional basis
/// labels are used for pretty-printing classes.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(IntMatrix gram, std::vector<std::string> labels = {});

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Bilinear pairing <v, w> in the basis coordinates.
  Int pair(const IntVec& v, const IntVec& w) const;
  /// Self-intersection <v, v>.
  Int norm(const IntVec& v) const { return pair(v, v); }

  bool is_unimodular() const;
  bool is_degenerate() const;
  bool is_even() const;

  /// Render a class as a signed combination of the basis labels.
  std::string format_class(const IntVec& v) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  IntMatrix gram_;
  std::vector<std::string> labels_;
};

/// Gram matrix of the hyperbolic plane U = [[0,1],[1,0]].
IntMatrix hyperbolic_gram();

/// Gram matrix of the negative definite E8 root lattice, in the basis this
/// library uses everywhere (determinant +1).
IntMatrix e8_gram();

/// The K3 lattice E8 + E8 + U + U + U (rank 22, unimodular, signature
/// (3, 19)).  Basis labels: lambda1..lambda8, lambda1'..lambda8',
/// mu1, mu2, mu1', mu2', mu1'', mu2''.
Lattice k3_lattice();

/// A linear map between lattices sending basis vector j of the source to
/// column j of the matrix; construction verifies it preserves the pairing.
class Embedding {
 public:
  /// images[j] is the image of source basis vector j, in target coordinates.
  /// Throws FormMismatchError (with the first offending index pair) if the
  /// images do not reproduce the source Gram matrix.
  static Embedding from_images(Lattice source, Lattice target,
                               const std::vector<IntVec>& images);

  const Lattice& source() const { return source_; }
  const Lattice& target() const { return target_; }
  /// target.rank() x source.rank(); column j = image of source basis j.
  const IntMatrix& matrix() const { return matrix_; }

  IntVec image_of(const IntVec& v) const { return matrix_ * v; }

 private:
  Embedding(Lattice source, Lattice target, IntMatrix matrix);

  Lattice source_, target_;
  IntMatrix matrix_;
};

/// Primitivity report: the embedded sublattice is primitive (saturated in
/// the target) exactly when all Smith diagonal entries equal 1.
struct PrimitivityResult {
  bool primitive = false;
  IntVec snf_diagonal;
};

PrimitivityResult is_primitive(const Embedding& e);

/// A sublattice of an ambient lattice: its own Gram matrix plus the
/// inclusion matrix (ambient.rank() x rank, column j = basis vector j in
/// ambient coordinates).
struct Sublattice {
  Lattice lattice;
  IntMatrix inclusion;

  std::size_t rank() const { return lattice.rank(); }
  std::vector<IntVec> basis() const;
};

/// Orthogonal complement of the image of e inside its target, with the
/// induced form.  Requires a nondegenerate source (DegenerateSourceError),
/// which forces image and complement to intersect trivially.
Sublattice orthogonal_complement(const Embedding& e);

/// Finite abelian group in invariant-factor form.  Factors are > 1 and each
/// divides the next; generators (when known) are coordinate vectors in some
/// ambient lattice, parallel to the factors.
struct FinAbGroup {
  std::vector<Int> invariant_factors;
  std::vector<IntVec> generators;

  bool trivial() const { return invariant_factors.empty(); }
  Int order() const;
  std::string to_string() const;

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
};

/// Discriminant group L*/L of a nondegenerate lattice; generators are given
/// as rational multiples cleared to the smallest integer lift, expressed in
/// the dual-basis coordinates of the Smith transform.  Throws
/// DegenerateLatticeError on degenerate input.
FinAbGroup discriminant_group(const Lattice& l);

}  // namespace k3orders
