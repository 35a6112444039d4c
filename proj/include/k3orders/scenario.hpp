#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "k3orders/certificates.hpp"
#include "k3orders/json_io.hpp"
#include "k3orders/lattice.hpp"
#include "k3orders/orders.hpp"
#include "k3orders/signature.hpp"

namespace k3orders {

/// Declared tangency pattern: `pairs` exchanged nodal pairs {v, phi(v)} whose
/// sums all equal `line` (a class on the surface lattice) with the given
/// contact number v . phi(v).
struct TangencyExpectation {
  IntVec line;
  Int contact;
  std::size_t pairs = 0;
};

/// Optional declared outcomes; each present field adds a comparison check to
/// the pipeline run.
struct Expectations {
  std::optional<Signature> signature;
  std::optional<std::vector<Int>> h1_factors;
  std::optional<std::vector<IntVec>> h1_generators;
  std::optional<SurfaceTag> quotient;
  std::optional<Int> order_count;
  std::optional<std::size_t> nodal_count;
  std::optional<TangencyExpectation> tangency;
  std::optional<IntMatrix> halved_gram;
  std::optional<std::vector<IntVec>> fixed_component_kernel;
};

/// Data needed for the order-theoretic stage: the canonical class of the
/// quotient surface in the oriented fixed-lattice basis, plus the branch
/// classes with their ramification indices.
struct OrderData {
  IntVec canonical;
  std::vector<RamificationDatum> ramification;
};

/// A complete verification problem: a lattice with involution, its embedding
/// into an ambient even lattice, and the positivity data needed to certify
/// the geometry of the quotient.
struct Scenario {
  std::string name;
  bool ambient_is_k3 = true;
  std::optional<IntMatrix> ambient_gram;  ///< set when ambient_is_k3 is false
  Lattice sublattice;
  std::vector<IntVec> embedding;  ///< image of each basis vector
  IntMatrix involution;           ///< columns are images of basis vectors
  unsigned involution_order = 2;
  std::optional<IntVec> effective_seed;
  std::optional<IntVec> ample_candidate;
  std::vector<IntVec> irreducible_neg2_images;  ///< hints on the fixed basis
  std::optional<std::vector<std::size_t>> fixed_component_rows;  // 1-indexed
  std::optional<OrderData> order_data;
  Expectations expect;

  Lattice ambient() const;
};

/// Parse/serialize the documented JSON schema.  Parsing throws SchemaError
/// with the offending field path; shape and symmetry constraints are checked
/// here, while lattice-theoretic failures surface as pipeline check failures.
Scenario scenario_from_json(const Json& j);
Json scenario_to_json(const Scenario& s);

/// Degree-n model of a double plane branched over a sextic: basis s1..sn,
/// involution s_i -> s1+s2-s_i.  Valid for 3 <= n <= 18, else OutOfRangeNError.
Scenario builtin_p2_sextic(std::size_t n);
/// Quadric model: rank-4 lattice whose quotient is P1 x P1.
Scenario builtin_quadric();
/// Rank-5 lattice whose quotient is the Hirzebruch surface F2.
Scenario builtin_hirzebruch2();

}  // namespace k3orders
