#include "k3orders/signature.hpp"

#include <sstream>
#include <vector>

namespace k3orders {

std::string to_string(const Signature& s) {
  std::ostringstream os;
  os << "(" << s.positive << ", " << s.negative << ", " << s.null << ")";
  return os.str();
}

Signature signature(const IntMatrix& gram) {
  if (!gram.is_symmetric())
    throw NonSymmetricError("signature: gram matrix is not symmetric");
  const std::size_t n = gram.rows();
  RatMatrix a(gram);
  std::vector<bool> live(n, true);
  Signature sig;

  std::size_t remaining = n;
  while (remaining > 0) {
    // prefer a nonzero diagonal pivot
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (live[i] && a(i, i) != 0) {
        p = i;
        break;
      }
    if (p < n) {
      const Rat piv = a(p, p);
      if (piv > 0)
        ++sig.positive;
      else
        ++sig.negative;
      for (std::size_t i = 0; i < n; ++i) {
        if (!live[i] || i == p || a(p, i) == 0) continue;
        const Rat f = a(p, i) / piv;
        for (std::size_t j = 0; j < n; ++j) {
          if (!live[j] || j == p) continue;
          a(i, j) -= f * a(p, j);
        }
      }
      live[p] = false;
      --remaining;
      continue;
    }
    // all live diagonal entries vanish: look for an off-diagonal entry and
    // split off the hyperbolic plane it spans
    std::size_t hi = n, hj = n;
    for (std::size_t i = 0; i < n && hi == n; ++i) {
      if (!live[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if (live[j] && a(i, j) != 0) {
          hi = i;
          hj = j;
          break;
        }
    }
    if (hi == n) {  // form vanishes on the remaining subspace
      sig.null += remaining;
      break;
    }
    const Rat b = a(hi, hj);
    ++sig.positive;
    ++sig.negative;
    // project the rest onto the orthogonal complement of the plane <e_i, e_j>
    for (std::size_t k = 0; k < n; ++k) {
      if (!live[k] || k == hi || k == hj) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (!live[l] || l == hi || l == hj) continue;
        a(k, l) -= (a(k, hj) * a(hi, l) + a(k, hi) * a(hj, l)) / b;
      }
    }
    live[hi] = live[hj] = false;
    remaining -= 2;
  }
  return sig;
}

bool is_negative_definite(const IntMatrix& gram) {
  const Signature s = signature(gram);
  return s.positive == 0 && s.null == 0;
}

bool is_hyperbolic(const IntMatrix& gram) {
  const Signature s = signature(gram);
  return s.positive == 1 && s.null == 0 && s.negative + 1 == gram.rows();
}

}  // namespace k3orders
