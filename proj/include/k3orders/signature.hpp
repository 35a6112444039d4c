#pragma once

#include <cstddef>
#include <string>

#include "k3orders/matrix.hpp"

namespace k3orders {

/// Inertia of a symmetric integer bilinear form.
struct Signature {
  std::size_t positive = 0, negative = 0, null = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

std::string to_string(const Signature& s);

/// Exact signature via congruence diagonalization over the rationals.
/// Off-diagonal pivots are handled by splitting off a hyperbolic plane,
/// which contributes (+1, -1).  Throws NonSymmetricError.
Signature signature(const IntMatrix& gram);

bool is_negative_definite(const IntMatrix& gram);

/// Signature (1, n-1, 0): one positive square, the rest negative.
bool is_hyperbolic(const IntMatrix& gram);

}  // namespace k3orders
