#include "k3orders/lattice.hpp"

#include <sstream>

namespace k3orders {

Lattice::Lattice(IntMatrix gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
  if (!gram_.is_symmetric())
    throw NonSymmetricError("Lattice: gram matrix is not symmetric");
  if (!labels_.empty() && labels_.size() != gram_.rows())
    throw DimensionMismatchError("Lattice: label count differs from rank");
  if (labels_.empty()) {
    labels_.reserve(rank());
    for (std::size_t i = 0; i < rank(); ++i)
      labels_.push_back("e" + std::to_string(i + 1));
  }
}

Int Lattice::pair(const IntVec& v, const IntVec& w) const {
  if (v.size() != rank() || w.size() != rank())
    throw DimensionMismatchError("pair: vector length differs from rank");
  Int acc = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) acc += v[i] * gram_(i, j) * w[j];
  }
  return acc;
}

bool Lattice::is_unimodular() const {
  const Int d = determinant(gram_);
  return d == 1 || d == -1;
}

bool Lattice::is_degenerate() const { return determinant(gram_) == 0; }

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (gram_(i, i) % 2 != 0) return false;
  return true;
}

std::string Lattice::format_class(const IntVec& v) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const Int a = v[i] < 0 ? Int(-v[i]) : v[i];
    if (first) {
      if (v[i] < 0) os << "-";
      first = false;
    } else {
      os << (v[i] < 0 ? " - " : " + ");
    }
    if (a != 1) os << a << "*";
    os << labels_[i];
  }
  if (first) return "0";
  return os.str();
}

IntMatrix hyperbolic_gram() { return IntMatrix{{0, 1}, {1, 0}}; }

IntMatrix e8_gram() {
  return IntMatrix{{-2, 0, 0, 1, 0, 0, 0, 0},   //
                   {0, -2, 1, 0, 0, 0, 0, 0},   //
                   {0, 1, -2, 1, 0, 0, 0, 0},   //
                   {1, 0, 1, -2, 1, 0, 0, 0},   //
                   {0, 0, 0, 1, -2, 1, 0, 0},   //
                   {0, 0, 0, 0, 1, -2, 1, 0},   //
                   {0, 0, 0, 0, 0, 1, -2, 1},   //
                   {0, 0, 0, 0, 0, 0, 1, -2}};
}

Lattice k3_lattice() {
  IntMatrix g(22, 22);
  const IntMatrix e8 = e8_gram();
  const IntMatrix u = hyperbolic_gram();
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      g(i, j) = e8(i, j);
      g(8 + i, 8 + j) = e8(i, j);
    }
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) g(16 + 2 * b + i, 16 + 2 * b + j) = u(i, j);

  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= 8; ++i) labels.push_back("lambda" + std::to_string(i));
  for (std::size_t i = 1; i <= 8; ++i)
    labels.push_back("lambda" + std::to_string(i) + "'");
  labels.insert(labels.end(), {"mu1", "mu2", "mu1'", "mu2'", "mu1''", "mu2''"});
  return Lattice(std::move(g), std::move(labels));
}

Embedding::Embedding(Lattice source, Lattice target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)),
      matrix_(std::move(matrix)) {}

Embedding Embedding::from_images(Lattice source, Lattice target,
                                 const std::vector<IntVec>& images) {
  if (images.size() != source.rank())
    throw DimensionMismatchError(
        "Embedding: one image per source basis vector required");
  for (const IntVec& im : images)
    if (im.size() != target.rank())
      throw DimensionMismatchError(
          "Embedding: image length differs from target rank");
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i; j < images.size(); ++j) {
      const Int got = target.pair(images[i], images[j]);
      const Int want = source.gram()(i, j);
      if (got != want) {
        std::ostringstream os;
        os << "Embedding: <" << source.labels()[i] << ", " << source.labels()[j]
           << "> maps to " << got << ", source form has " << want;
        throw FormMismatchError(i, j, os.str());
      }
    }
  return Embedding(std::move(source), std::move(target),
                   IntMatrix::from_columns(images));
}

PrimitivityResult is_primitive(const Embedding& e) {
  PrimitivityResult res;
  res.snf_diagonal = smith_normal_form(e.matrix()).diagonal();
  res.primitive = true;
  for (const Int& d : res.snf_diagonal)
    if (d != 1) res.primitive = false;
  return res;
}

std::vector<IntVec> Sublattice::basis() const {
  std::vector<IntVec> b;
  b.reserve(inclusion.cols());
  for (std::size_t j = 0; j < inclusion.cols(); ++j)
    b.push_back(inclusion.column(j));
  return b;
}

Sublattice orthogonal_complement(const Embedding& e) {
  if (determinant(e.source().gram()) == 0)
    throw DegenerateSourceError(
        "orthogonal_complement: source form is degenerate");
  // x is orthogonal to the image iff (M^T * G_target) x = 0
  const IntMatrix n = e.matrix().transposed() * e.target().gram();
  const std::vector<IntVec> basis = integer_kernel(n);
  const IntMatrix inclusion = columns_matrix(e.target().rank(), basis);
  const IntMatrix gram =
      inclusion.transposed() * e.target().gram() * inclusion;
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= basis.size(); ++i)
    labels.push_back("t" + std::to_string(i));
  return Sublattice{Lattice(gram, std::move(labels)), inclusion};
}

Int FinAbGroup::order() const {
  Int n = 1;
  for (const Int& d : invariant_factors) n *= d;
  return n;
}

std::string FinAbGroup::to_string() const {
  if (trivial()) return "trivial";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < invariant_factors.size()) {
    std::size_t j = i;
    while (j < invariant_factors.size() &&
           invariant_factors[j] == invariant_factors[i])
      ++j;
    if (!first) os << " x ";
    first = false;
    const std::size_t e = j - i;
    if (e == 1)
      os << "Z/" << invariant_factors[i];
    else
      os << "(Z/" << invariant_factors[i] << ")^" << e;
    i = j;
  }
  return os.str();
}

FinAbGroup discriminant_group(const Lattice& l) {
  if (l.is_degenerate())
    throw DegenerateLatticeError("discriminant_group: degenerate form");
  // L*/L is the cokernel of the Gram matrix: Z^n / G Z^n.
  const SnfResult s = smith_normal_form(l.gram());
  const IntMatrix uinv = inverse_unimodular(s.u);
  FinAbGroup g;
  const IntVec diag = s.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (diag[i] > 1) {
      g.invariant_factors.push_back(diag[i]);
      g.generators.push_back(uinv.column(i));
    }
  return g;
}

}  // namespace k3orders
