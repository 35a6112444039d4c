#include "k3orders/normal_form.hpp"

#include <algorithm>

namespace k3orders {

using boost::multiprecision::abs;

IntVec SnfResult::diagonal() const {
  const std::size_t n = std::min(d.rows(), d.cols());
  IntVec diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = d(i, i);
  return diag;
}

std::size_t SnfResult::rank() const {
  std::size_t r = 0;
  for (const Int& x : diagonal())
    if (x != 0) ++r;
  return r;
}

SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  SnfResult res{IntMatrix::identity(R), m, IntMatrix::identity(C)};
  IntMatrix& a = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;

  std::size_t t = 0;
  const std::size_t steps = std::min(R, C);
  while (t < steps) {
    // pick the nonzero entry of smallest magnitude as pivot
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (a(i, j) != 0 && (pi == R || abs(a(i, j)) < abs(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == R) break;  // remaining submatrix is zero
    if (pi != t) {
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
    }
    if (pj != t) {
      a.swap_columns(t, pj);
      v.swap_columns(t, pj);
    }

    // Euclid in row and column t until both are clear off the pivot
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a(i, t) == 0) continue;
        const Int q = a(i, t) / a(t, t);
        if (q != 0) {
          a.add_row_multiple(i, t, -q);
          u.add_row_multiple(i, t, -q);
        }
        if (a(i, t) != 0) {  // remainder becomes the new, smaller pivot
          a.swap_rows(t, i);
          u.swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a(t, j) == 0) continue;
        const Int q = a(t, j) / a(t, t);
        if (q != 0) {
          a.add_column_multiple(j, t, -q);
          v.add_column_multiple(j, t, -q);
        }
        if (a(t, j) != 0) {
          a.swap_columns(t, j);
          v.swap_columns(t, j);
          dirty = true;  // the swapped-in column may be nonzero below row t
        }
      }
    }

    // enforce the divisibility chain: pivot must divide the whole tail
    bool restart = false;
    for (std::size_t i = t + 1; i < R && !restart; ++i)
      for (std::size_t j = t + 1; j < C && !restart; ++j)
        if (a(i, j) % a(t, t) != 0) {
          a.add_row_multiple(t, i, 1);
          u.add_row_multiple(t, i, 1);
          restart = true;
        }
    if (restart) continue;

    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
    ++t;
  }
  return res;
}

HnfResult hermite_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  HnfResult res{m, IntMatrix::identity(R)};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;

  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    // reduce column c to a single nonzero entry among rows >= r
    while (true) {
      std::size_t best = R;
      for (std::size_t i = r; i < R; ++i)
        if (h(i, c) != 0 && (best == R || abs(h(i, c)) < abs(h(best, c))))
          best = i;
      if (best == R) break;
      if (best != r) {
        h.swap_rows(r, best);
        u.swap_rows(r, best);
      }
      bool remainder = false;
      for (std::size_t i = r + 1; i < R; ++i) {
        if (h(i, c) == 0) continue;
        const Int q = h(i, c) / h(r, c);
        if (q != 0) {
          h.add_row_multiple(i, r, -q);
          u.add_row_multiple(i, r, -q);
        }
        if (h(i, c) != 0) remainder = true;
      }
      if (!remainder) break;
    }
    if (h(r, c) == 0) continue;  // no pivot in this column
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {  // reduce entries above into [0, pivot)
      const Int q = floor_div(h(i, c), h(r, c));
      if (q != 0) {
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
      }
    }
    ++r;
  }
  return res;
}

std::vector<IntVec> integer_kernel(const IntMatrix& m) {
  // m*x = 0  <=>  d*(v^-1 x) = 0, so the kernel is spanned by the columns of
  // v sitting over zero diagonal entries; v unimodular makes this saturated.
  const SnfResult s = smith_normal_form(m);
  const std::size_t C = m.cols(), n = std::min(m.rows(), C);
  std::vector<IntVec> basis;
  for (std::size_t j = 0; j < C; ++j)
    if (j >= n || s.d(j, j) == 0) basis.push_back(s.v.column(j));
  return basis;
}

std::optional<IntVec> solve_integral(const IntMatrix& m, const IntVec& b) {
  if (b.size() != m.rows())
    throw DimensionMismatchError("solve_integral: rhs size mismatch");
  const SnfResult s = smith_normal_form(m);
  const IntVec c = s.u * b;
  const std::size_t R = m.rows(), C = m.cols(), n = std::min(R, C);
  IntVec y(C);
  for (std::size_t i = 0; i < R; ++i) {
    const Int di = i < n ? s.d(i, i) : Int(0);
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % di != 0) return std::nullopt;
      y[i] = c[i] / di;
    }
  }
  return s.v * y;
}

Int determinant(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionMismatchError("determinant: not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;  // exact
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  if (!m.is_square()) return false;
  const Int d = determinant(m);
  return d == 1 || d == -1;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (!is_unimodular(m))
    throw Error("inverse_unimodular: matrix is not unimodular");
  return RatMatrix(m).inverse().to_integer();
}

static IntMatrix nonzero_rows(const IntMatrix& h) {
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    IntVec r = h.row(i);
    if (!is_zero(r)) rows.push_back(std::move(r));
  }
  IntMatrix out(rows.size(), h.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = rows[i][j];
  return out;
}

bool same_row_span(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) return false;
  return nonzero_rows(hermite_normal_form(a).h) ==
         nonzero_rows(hermite_normal_form(b).h);
}

}  // namespace k3orders
