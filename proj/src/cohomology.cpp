#include "k3orders/cohomology.hpp"

#include <sstream>

#include "k3orders/normal_form.hpp"

namespace k3orders {

IntMatrix norm_matrix(const CyclicAction& a) {
  const std::size_t n = a.lattice().rank();
  IntMatrix acc(n, n);
  IntMatrix power = IntMatrix::identity(n);
  for (unsigned k = 0; k < a.order(); ++k) {
    acc = acc + power;
    power = power * a.matrix();
  }
  return acc;
}

CocycleClasses::CocycleClasses(const CyclicAction& a)
    : action_(a), norm_(norm_matrix(a)) {
  const std::size_t n = a.lattice().rank();
  kernel_basis_ = integer_kernel(norm_);
  const std::size_t m = kernel_basis_.size();
  kernel_matrix_ = columns_matrix(n, kernel_basis_);

  // express each column of (1 - s) in kernel coordinates; the columns lie in
  // ker(norm) and the basis is saturated, so integral coordinates exist
  const IntMatrix one_minus = IntMatrix::identity(n) - a.matrix();
  coord_matrix_ = IntMatrix(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto x = solve_integral(kernel_matrix_, one_minus.column(j));
    if (!x)
      throw Error("CocycleClasses: column of (1 - s) escapes ker(norm)");
    for (std::size_t i = 0; i < m; ++i) coord_matrix_(i, j) = (*x)[i];
  }

  image_hnf_ = hermite_normal_form(coord_matrix_.transposed()).h;

  // quotient Z^m / im(coord_matrix) in invariant-factor form
  const SnfResult s = smith_normal_form(coord_matrix_);
  const IntVec diag = s.diagonal();
  for (std::size_t i = 0; i < m; ++i)
    if (i >= diag.size() || diag[i] == 0)
      throw Error("CocycleClasses: quotient has a free part (unexpected)");
  const IntMatrix uinv =
      m == 0 ? IntMatrix(0, 0) : inverse_unimodular(s.u);
  for (std::size_t i = 0; i < m; ++i)
    if (diag[i] > 1) {
      group_.invariant_factors.push_back(diag[i]);
      group_.generators.push_back(reduce(kernel_matrix_ * uinv.column(i)));
    }
}

bool CocycleClasses::is_cocycle(const IntVec& v) const {
  return is_zero(norm_ * v);
}

IntVec CocycleClasses::kernel_coordinates(const IntVec& v) const {
  if (!is_cocycle(v)) {
    std::ostringstream os;
    os << "not a cocycle: norm of " << action_.lattice().format_class(v)
       << " is nonzero";
    throw NotACocycleError(os.str());
  }
  const auto x = solve_integral(kernel_matrix_, v);
  if (!x) throw Error("kernel_coordinates: saturated basis failed (bug)");
  return *x;
}

IntVec CocycleClasses::reduce(const IntVec& v) const {
  IntVec x = kernel_coordinates(v);
  // reduce against the HNF rows; pivots sit strictly left-to-right, and rows
  // below never disturb the pivot coordinates already normalized
  for (std::size_t r = 0; r < image_hnf_.rows(); ++r) {
    const IntVec row = image_hnf_.row(r);
    if (is_zero(row)) continue;
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    const Int q = floor_div(x[p], row[p]);
    if (q != 0)
      for (std::size_t k = 0; k < x.size(); ++k) x[k] -= q * row[k];
  }
  return kernel_matrix_ * x;
}

bool CocycleClasses::covers(const std::vector<IntVec>& cocycles) const {
  const std::size_t m = kernel_basis_.size();
  // candidates together with im(1 - s) must span all of Z^m
  IntMatrix all(m, coord_matrix_.cols() + cocycles.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < coord_matrix_.cols(); ++j)
      all(i, j) = coord_matrix_(i, j);
  for (std::size_t c = 0; c < cocycles.size(); ++c) {
    const IntVec x = kernel_coordinates(cocycles[c]);
    for (std::size_t i = 0; i < m; ++i)
      all(i, coord_matrix_.cols() + c) = x[i];
  }
  const IntVec diag = smith_normal_form(all).diagonal();
  std::size_t ones = 0;
  for (const Int& d : diag)
    if (d == 1) ++ones;
  return ones == m;
}

FinAbGroup h1(const CyclicAction& a) { return CocycleClasses(a).group(); }

bool same_class(const CyclicAction& a, const IntVec& v, const IntVec& w) {
  const IntMatrix norm = norm_matrix(a);
  if (!is_zero(norm * v) || !is_zero(norm * w))
    throw NotACocycleError("same_class: inputs must be cocycles");
  const std::size_t n = a.lattice().rank();
  return solve_integral(IntMatrix::identity(n) - a.matrix(), v - w).has_value();
}

}  // namespace k3orders
