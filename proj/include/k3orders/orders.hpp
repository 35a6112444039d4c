#pragma once

#include "k3orders/certificates.hpp"
#include "k3orders/cohomology.hpp"

namespace k3orders {

/// Picard data of the surface an order lives on: lattice plus canonical
/// class (coordinates in the lattice basis).
struct SurfaceModel {
  Lattice pic;
  IntVec canonical;
  SurfaceTag tag = SurfaceTag::Undetermined;

  /// Pic = Z.H with H^2 = 1, K = -3H.
  static SurfaceModel projective_plane();
  /// Pic = Z.f1 + Z.f2 with the hyperbolic form, K = -2f1 - 2f2.
  static SurfaceModel quadric();
  /// Pic = Z.C0 + Z.F with C0^2 = -2, C0.F = 1, F^2 = 0, K = -2C0 - 4F.
  static SurfaceModel hirzebruch2();
  static SurfaceModel custom(Lattice pic, IntVec canonical);
};

/// One ramification component: the divisor class it lives on and the
/// ramification index of the order there.
struct RamificationDatum {
  IntVec divisor_class;
  unsigned index = 2;
};

/// Everything needed to do divisor-class bookkeeping for an order on a
/// surface: where it ramifies and with which indices.
struct OrderDescriptor {
  SurfaceModel surface;
  std::vector<RamificationDatum> ramification;
};

/// Canonical class of the order: K_A = K_Z + sum (1 - 1/e_i) D_i, computed
/// with exact rational coefficients.
RatVec canonical_order_class(const OrderDescriptor& d);

/// K_A is numerically trivial: it pairs to zero with the whole lattice.
bool is_numerically_cy(const OrderDescriptor& d);

/// The nonzero classes of a 2-torsion cohomology group, as representatives
/// for the Brauer data of the orders in the construction.  Groups with a
/// factor other than 2 are not handled (UnsupportedTorsionError).  At most
/// `cap` classes are materialized; the total count 2^k - 1 is always exact,
/// and whenever everything is materialized the list size is checked against
/// the formula.
struct OrderEnumeration {
  Int total;
  std::vector<IntVec> classes;
  bool truncated = false;
};

OrderEnumeration enumerate_orders(const FinAbGroup& h1, const CyclicAction& a,
                                  std::size_t cap = 256);

/// Ramification profile over a pencil: for each ramification component, the
/// intersection number with the fibre class counts the points over a general
/// fibre, each carrying the component's index.  Sorted ascending.  A
/// negative intersection number is rejected (NegativeMultiplicityError).
std::vector<unsigned> ramification_vector(const OrderDescriptor& d,
                                          const IntVec& fibre);

/// Inputs this toolkit takes on faith rather than verifying; every report
/// that claims an order exists carries these.
struct OrderAssumption {
  std::string tag;
  std::string statement;
};

std::vector<OrderAssumption> order_assumptions();

}  // namespace k3orders
