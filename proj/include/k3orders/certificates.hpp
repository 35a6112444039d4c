#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3orders/action.hpp"

namespace k3orders {

/// Why a class is certified: the rule that fired plus its witnesses.
struct Justification {
  std::string rule;
  std::optional<IntVec> partner;
  std::optional<Int> pairing;
  std::string note;
};

struct AmpleCertificate {
  bool ok = false;
  Int s_squared;
  struct GeneratorLine {
    IntVec generator;
    Int s_dot_g;
    Int s_dot_residual;  // s.(s - g)
  };
  std::vector<GeneratorLine> lines;
  std::string failure;  // empty when ok
};

/// Book of certified divisor classes on a hyperbolic lattice (a Picard
/// group), with the deduction rules used to grow it:
///
///  * seed_effective: a class of square >= -2 is declared effective up to
///    sign; seeding fixes the sign (throws SquareTooNegativeError below -2).
///  * derive_effective: a class v with v.v >= -2 has v or -v effective; a
///    strictly positive pairing against an already-certified effective class
///    rules out -v, unless -v itself is already certified.  Partners are
///    preferred in the order ample > irreducible > effective.
///  * certify_ample: Nakai-style positivity against a spanning family of
///    certified effective generators; hypotheses must be certified first
///    (UncertifiedHypothesisError), and afterwards every certified effective
///    class must meet the candidate positively.
///  * certify_nodal: an effective class of square -2 and ample-degree 1 is
///    an irreducible (-2)-curve class.  Needs an ample certificate
///    (NoAmpleCertificateError) and a certified-effective input.
struct CertStore {
  explicit CertStore(Lattice lattice);

  struct Entry {
    IntVec cls;
    bool effective = false;
    bool irreducible = false;
    bool nodal = false;
    Justification just;
  };

  const Lattice& lattice() const { return lattice_; }
  const std::vector<Entry>& entries() const { return entries_; }
  const std::optional<IntVec>& ample() const { return ample_; }
  const std::optional<AmpleCertificate>& ample_certificate() const {
    return ample_cert_;
  }

  bool is_effective(const IntVec& v) const;
  bool is_irreducible(const IntVec& v) const;
  bool is_nodal(const IntVec& v) const;
  std::vector<IntVec> nodal_classes() const;

  void seed_effective(const IntVec& v);
  /// Externally supplied geometric input (e.g. the class of a known curve
  /// on the surface); recorded as an assumption, not a deduction.
  void declare_irreducible(const IntVec& v, std::string note);
  bool derive_effective(const IntVec& v);
  AmpleCertificate certify_ample(const IntVec& s,
                                 const std::vector<IntVec>& generators);
  bool certify_nodal(const IntVec& v);

 private:
  Entry& entry(const IntVec& v);
  const Entry* find(const IntVec& v) const;

  Lattice lattice_;
  std::vector<Entry> entries_;
  std::map<IntVec, std::size_t> index_;
  std::optional<IntVec> ample_;
  std::optional<AmpleCertificate> ample_cert_;
};

enum class SurfaceTag { P2, P1xP1, F2, Undetermined };

std::string to_string(SurfaceTag t);

struct QuotientIdentification {
  SurfaceTag tag = SurfaceTag::Undetermined;
  std::string rule;
};

/// Match a halved fixed lattice against the minimal rational surfaces this
/// toolkit knows.  Rank 1 with self-intersection 1 is the plane.  The rank-2
/// even unimodular case is the quadric unless a declared irreducible class
/// of halved square -2 (a negative section) forces the ruled surface F2.
/// Ranks above 2 are not classified here (UnsupportedRankError).
QuotientIdentification identify_quotient(
    const Lattice& halved, const std::vector<IntVec>& irreducible_neg2_images);

/// Pairs {v, phi(v)} of distinct certified nodal classes, grouped by the
/// invariant class v + phi(v) they sum to and the contact number v.phi(v).
/// Each group is one line (or ruling fibre) downstairs, counted with the
/// number of nodal pairs lying over it.
struct TangencyGroup {
  IntVec line;
  Int contact;
  std::vector<std::pair<IntVec, IntVec>> pairs;
};

std::vector<TangencyGroup> tangency_summary(const CyclicAction& a,
                                            const CertStore& store);

/// Number of nodal pairs over the rank-one fixed generator with contact 3:
/// the tritangent count of the branch sextic model.  Requires the fixed
/// lattice to have rank one.
std::size_t tritangent_check(const CyclicAction& a, const CertStore& store);

}  // namespace k3orders
