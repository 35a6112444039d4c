#include "k3orders/orders.hpp"

#include <algorithm>
#include <sstream>

namespace k3orders {

SurfaceModel SurfaceModel::projective_plane() {
  return SurfaceModel{Lattice(IntMatrix{{1}}, {"H"}), IntVec{-3},
                      SurfaceTag::P2};
}

SurfaceModel SurfaceModel::quadric() {
  return SurfaceModel{Lattice(hyperbolic_gram(), {"f1", "f2"}), IntVec{-2, -2},
                      SurfaceTag::P1xP1};
}

SurfaceModel SurfaceModel::hirzebruch2() {
  return SurfaceModel{Lattice(IntMatrix{{-2, 1}, {1, 0}}, {"C0", "F"}),
                      IntVec{-2, -4}, SurfaceTag::F2};
}

SurfaceModel SurfaceModel::custom(Lattice pic, IntVec canonical) {
  if (canonical.size() != pic.rank())
    throw DimensionMismatchError(
        "SurfaceModel: canonical class length differs from rank");
  return SurfaceModel{std::move(pic), std::move(canonical),
                      SurfaceTag::Undetermined};
}

RatVec canonical_order_class(const OrderDescriptor& d) {
  const std::size_t n = d.surface.pic.rank();
  RatVec k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = Rat(d.surface.canonical[i]);
  for (const RamificationDatum& r : d.ramification) {
    if (r.divisor_class.size() != n)
      throw DimensionMismatchError(
          "canonical_order_class: ramification class length differs from rank");
    if (r.index < 2)
      throw Error("canonical_order_class: ramification index must be >= 2");
    const Rat coef = Rat(1) - make_rat(1, r.index);
    for (std::size_t i = 0; i < n; ++i) k[i] += coef * Rat(r.divisor_class[i]);
  }
  return k;
}

bool is_numerically_cy(const OrderDescriptor& d) {
  const RatVec k = canonical_order_class(d);
  const RatVec paired = RatMatrix(d.surface.pic.gram()) * k;
  for (const Rat& x : paired)
    if (x != 0) return false;
  return true;
}

OrderEnumeration enumerate_orders(const FinAbGroup& h1, const CyclicAction& a,
                                  std::size_t cap) {
  for (const Int& f : h1.invariant_factors)
    if (f != 2)
      throw UnsupportedTorsionError(
          "enumerate_orders: only 2-torsion classes are supported, found Z/" +
          f.str());
  const std::size_t k = h1.invariant_factors.size();
  if (h1.generators.size() != k)
    throw Error("enumerate_orders: group carries no explicit generators");

  OrderEnumeration out;
  out.total = (Int(1) << k) - 1;
  const IntMatrix norm = norm_matrix(a);
  const std::size_t n = a.lattice().rank();
  for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
    if (out.classes.size() == cap) {
      out.truncated = true;
      break;
    }
    IntVec cls(n);
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t(1) << i)) cls = cls + h1.generators[i];
    if (!is_zero(norm * cls))
      throw Error("enumerate_orders: generator combination is not a cocycle");
    out.classes.push_back(std::move(cls));
  }
  if (!out.truncated && Int(out.classes.size()) != out.total)
    throw Error("enumerate_orders: materialized count deviates from 2^k - 1");
  return out;
}

std::vector<unsigned> ramification_vector(const OrderDescriptor& d,
                                          const IntVec& fibre) {
  std::vector<unsigned> out;
  for (const RamificationDatum& r : d.ramification) {
    const Int m = d.surface.pic.pair(r.divisor_class, fibre);
    if (m < 0) {
      std::ostringstream os;
      os << "ramification_vector: component "
         << d.surface.pic.format_class(r.divisor_class)
         << " meets the fibre in " << m << " points";
      throw NegativeMultiplicityError(os.str());
    }
    for (Int i = 0; i < m; ++i) out.push_back(r.index);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<OrderAssumption> order_assumptions() {
  return {
      {"cocycle-gluing-overlap",
       "the cyclic-algebra gluing data attached to the cocycle satisfies the "
       "overlap condition on triple intersections; this toolkit verifies the "
       "divisor-class bookkeeping, not the gluing itself"},
      {"maximality-from-irreducible-restriction",
       "the constructed order is maximal provided the residue algebra along "
       "each ramification component is a field; this holds when the "
       "restricted cover stays irreducible and is taken as given"},
      {"distinct-classes-from-total-ramification",
       "distinct nonzero cohomology classes produce non-isomorphic orders "
       "provided the associated covers are totally ramified over the branch "
       "divisor, which forces their relative Brauer classes apart"},
  };
}

}  // namespace k3orders
