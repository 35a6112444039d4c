#include "k3orders/action.hpp"

#include <sstream>

namespace k3orders {

bool is_isometry(const Lattice& l, const IntMatrix& matrix) {
  if (matrix.rows() != l.rank() || matrix.cols() != l.rank()) return false;
  return matrix.transposed() * l.gram() * matrix == l.gram();
}

CyclicAction::CyclicAction(Lattice lattice, IntMatrix matrix, unsigned order)
    : CyclicAction(std::move(lattice), std::move(matrix), order, true) {}

CyclicAction CyclicAction::with_declared_order(Lattice lattice, IntMatrix matrix,
                                               unsigned order) {
  return CyclicAction(std::move(lattice), std::move(matrix), order, false);
}

CyclicAction::CyclicAction(Lattice lattice, IntMatrix matrix, unsigned order,
                           bool require_minimal)
    : lattice_(std::move(lattice)), matrix_(std::move(matrix)), order_(order) {
  if (order_ == 0) throw WrongOrderError("CyclicAction: order must be positive");
  if (!is_isometry(lattice_, matrix_))
    throw NotAnIsometryError(
        "CyclicAction: matrix does not preserve the pairing");
  IntMatrix power = matrix_;
  for (unsigned k = 1; k < order_; ++k) {
    if (power.is_identity() && require_minimal) {
      std::ostringstream os;
      os << "CyclicAction: matrix has order " << k << ", declared " << order_;
      throw WrongOrderError(os.str());
    }
    power = power * matrix_;
  }
  if (!power.is_identity())
    throw WrongOrderError("CyclicAction: matrix^order is not the identity");
}

static ExtensionResult extend_impl(const Lattice& ambient,
                                   const IntMatrix& images,
                                   const IntMatrix& action) {
  const std::size_t n = ambient.rank(), r = images.cols();
  if (images.rows() != n)
    throw DimensionMismatchError("extend: image rows differ from ambient rank");
  if (action.rows() != r || action.cols() != r)
    throw DimensionMismatchError("extend: action shape differs from sublattice");

  // complement basis: kernel of (images^T * G)
  const std::vector<IntVec> comp = integer_kernel(images.transposed() * ambient.gram());
  if (r + comp.size() != n)
    throw DegenerateSourceError(
        "extend: image and complement do not span rationally (degenerate form?)");

  // change of basis C = [images | comp]; the candidate sends the image
  // columns through the action and negates the complement columns, so it is
  // [images * action | -comp] * C^-1 over the rationals.
  IntMatrix c(n, n), mapped(n, n);
  const IntMatrix img_act = images * action;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      c(i, j) = images(i, j);
      mapped(i, j) = img_act(i, j);
    }
    for (std::size_t j = 0; j < comp.size(); ++j) {
      c(i, r + j) = comp[j][i];
      mapped(i, r + j) = -comp[j][i];
    }
  }
  const RatMatrix candidate = RatMatrix(mapped) * RatMatrix(c).inverse();

  ExtensionResult res;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!is_integer(candidate(i, j))) {
        res.extends = false;
        res.failed_entry = ExtensionResult::FailedEntry{i, j, candidate(i, j)};
        return res;
      }
  res.extends = true;
  res.matrix = candidate.to_integer();
  return res;
}

ExtensionResult extends_to_ambient(const PartialIsometry& p) {
  const Lattice& ambient = p.embedding.target();
  ExtensionResult res =
      extend_impl(ambient, p.embedding.matrix(), p.action.matrix());
  if (!res.extends) return res;

  // the witness is re-verified, not trusted
  const IntMatrix& w = res.matrix;
  if (!is_isometry(ambient, w))
    throw Error("extends_to_ambient: witness fails to preserve the form");
  if (w * p.embedding.matrix() != p.embedding.matrix() * p.action.matrix())
    throw Error("extends_to_ambient: witness does not restrict to the action");
  const std::vector<IntVec> comp = integer_kernel(
      p.embedding.matrix().transposed() * ambient.gram());
  for (const IntVec& t : comp)
    if (w * t != -t)
      throw Error("extends_to_ambient: witness does not negate the complement");
  // negating the complement makes the ambient order lcm(action order, 2)
  const unsigned ambient_order =
      p.action.order() % 2 == 0 ? p.action.order() : 2 * p.action.order();
  IntMatrix power = w;
  for (unsigned k = 1; k < ambient_order; ++k) power = power * w;
  if (!power.is_identity())
    throw Error("extends_to_ambient: witness order differs from the action");
  return res;
}

ExtensionResult extend_by_negation(const Lattice& ambient,
                                   const IntMatrix& images,
                                   const IntMatrix& action) {
  return extend_impl(ambient, images, action);
}

Sublattice fixed_sublattice(const CyclicAction& a) {
  const std::size_t n = a.lattice().rank();
  const std::vector<IntVec> basis =
      integer_kernel(a.matrix() - IntMatrix::identity(n));
  const IntMatrix inclusion = columns_matrix(n, basis);
  const IntMatrix gram =
      inclusion.transposed() * a.lattice().gram() * inclusion;
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= basis.size(); ++i)
    labels.push_back("f" + std::to_string(i));
  return Sublattice{Lattice(gram, std::move(labels)), inclusion};
}

Lattice halved_form(const Lattice& l) {
  IntMatrix g = l.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j) % 2 != 0) {
        std::ostringstream os;
        os << "halved_form: entry (" << i + 1 << ", " << j + 1 << ") = "
           << g(i, j) << " is odd";
        throw OddEntryError(os.str());
      }
      g(i, j) /= 2;
    }
  return Lattice(std::move(g), l.labels());
}

IntVec partial_norm(const CyclicAction& a, const IntVec& v, unsigned k) {
  IntVec acc(a.lattice().rank());
  IntVec cur = v;
  for (unsigned i = 0; i < k; ++i) {
    acc = acc + cur;
    cur = a.apply(cur);
  }
  return acc;
}

}  // namespace k3orders
