#include "k3orders/certificates.hpp"

#include <algorithm>
#include <sstream>

namespace k3orders {

CertStore::CertStore(Lattice lattice) : lattice_(std::move(lattice)) {}

CertStore::Entry& CertStore::entry(const IntVec& v) {
  const auto it = index_.find(v);
  if (it != index_.end()) return entries_[it->second];
  index_.emplace(v, entries_.size());
  entries_.push_back(Entry{v, false, false, false, {}});
  return entries_.back();
}

const CertStore::Entry* CertStore::find(const IntVec& v) const {
  const auto it = index_.find(v);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

bool CertStore::is_effective(const IntVec& v) const {
  const Entry* e = find(v);
  return e && e->effective;
}

bool CertStore::is_irreducible(const IntVec& v) const {
  const Entry* e = find(v);
  return e && e->irreducible;
}

bool CertStore::is_nodal(const IntVec& v) const {
  const Entry* e = find(v);
  return e && e->nodal;
}

std::vector<IntVec> CertStore::nodal_classes() const {
  std::vector<IntVec> out;
  for (const Entry& e : entries_)
    if (e.nodal) out.push_back(e.cls);
  return out;
}

void CertStore::seed_effective(const IntVec& v) {
  const Int sq = lattice_.norm(v);
  if (sq < -2) {
    std::ostringstream os;
    os << "seed_effective: " << lattice_.format_class(v) << " has square "
       << sq << " < -2";
    throw SquareTooNegativeError(os.str());
  }
  Entry& e = entry(v);
  if (e.effective) return;
  e.effective = true;
  e.just = Justification{
      "seed", std::nullopt, std::nullopt,
      "square >= -2 makes the class effective up to sign; the sign is fixed "
      "by this choice of basis"};
}

void CertStore::declare_irreducible(const IntVec& v, std::string note) {
  Entry& e = entry(v);
  e.effective = true;
  e.irreducible = true;
  e.just = Justification{"declared-irreducible", std::nullopt, std::nullopt,
                         std::move(note)};
}

bool CertStore::derive_effective(const IntVec& v) {
  if (is_effective(v)) return true;
  if (lattice_.norm(v) < -2) return false;
  if (is_zero(v)) return false;
  // if -v is already known effective, positivity of some pairing cannot be
  // used to rule it out, so refuse to certify v
  if (is_effective(-v)) return false;

  const Entry* best = nullptr;
  int best_kind = -1;  // 2 = ample, 1 = irreducible, 0 = plain effective
  for (const Entry& cand : entries_) {
    if (!cand.effective) continue;
    if (lattice_.pair(v, cand.cls) <= 0) continue;
    int kind = cand.irreducible ? 1 : 0;
    if (ample_ && cand.cls == *ample_) kind = 2;
    if (kind > best_kind) {
      best_kind = kind;
      best = &cand;
    }
  }
  if (!best) return false;

  const char* rules[] = {"pairs-positively-with-effective",
                         "pairs-positively-with-irreducible",
                         "pairs-positively-with-ample"};
  const IntVec partner = best->cls;  // entry() below may reallocate entries_
  const Int pairing = lattice_.pair(v, partner);
  Entry& e = entry(v);
  e.effective = true;
  e.just = Justification{
      rules[best_kind], partner, pairing,
      "square >= -2 and a positive pairing against a certified effective "
      "class exclude the negative alternative"};
  return true;
}

AmpleCertificate CertStore::certify_ample(const IntVec& s,
                                          const std::vector<IntVec>& generators) {
  if (!is_effective(s))
    throw UncertifiedHypothesisError(
        "certify_ample: candidate " + lattice_.format_class(s) +
        " is not certified effective");
  for (const IntVec& g : generators) {
    if (!is_effective(g))
      throw UncertifiedHypothesisError(
          "certify_ample: generator " + lattice_.format_class(g) +
          " is not certified effective");
    if (!is_effective(s - g))
      throw UncertifiedHypothesisError(
          "certify_ample: residual " + lattice_.format_class(s - g) +
          " is not certified effective");
  }
  const IntMatrix gmat = columns_matrix(lattice_.rank(), generators);
  if (smith_normal_form(gmat).rank() != lattice_.rank())
    throw Error("certify_ample: generators do not span the lattice");

  AmpleCertificate cert;
  cert.s_squared = lattice_.norm(s);
  if (cert.s_squared <= 0) {
    cert.failure = "candidate has non-positive square";
    return cert;
  }
  for (const IntVec& g : generators) {
    AmpleCertificate::GeneratorLine line{g, lattice_.pair(s, g),
                                         lattice_.pair(s, s - g)};
    if (line.s_dot_g <= 0 || line.s_dot_residual <= 0) {
      cert.failure = "candidate fails positivity against " +
                     lattice_.format_class(g);
      cert.lines.push_back(std::move(line));
      return cert;
    }
    cert.lines.push_back(std::move(line));
  }
  // consistency sweep: everything certified effective must be met positively
  for (const Entry& e : entries_) {
    if (!e.effective || is_zero(e.cls)) continue;
    if (lattice_.pair(s, e.cls) <= 0) {
      cert.failure = "candidate meets certified effective class " +
                     lattice_.format_class(e.cls) + " non-positively";
      return cert;
    }
  }
  cert.ok = true;
  ample_ = s;
  ample_cert_ = cert;
  return cert;
}

bool CertStore::certify_nodal(const IntVec& v) {
  if (!ample_)
    throw NoAmpleCertificateError(
        "certify_nodal: no ample class has been certified");
  if (!is_effective(v))
    throw UncertifiedHypothesisError(
        "certify_nodal: " + lattice_.format_class(v) +
        " is not certified effective");
  if (is_nodal(v)) return true;
  if (lattice_.norm(v) != -2) return false;
  if (lattice_.pair(*ample_, v) != 1) return false;
  const IntVec ample_cls = *ample_;
  Entry& e = entry(v);
  e.nodal = true;
  e.irreducible = true;
  e.just = Justification{
      "nodal-degree-one", ample_cls, Int(1),
      "effective, square -2, degree 1 against the ample class: a single "
      "reduced irreducible (-2)-curve"};
  return true;
}

std::string to_string(SurfaceTag t) {
  switch (t) {
    case SurfaceTag::P2:
      return "P2";
    case SurfaceTag::P1xP1:
      return "P1xP1";
    case SurfaceTag::F2:
      return "F2";
    default:
      return "undetermined";
  }
}

QuotientIdentification identify_quotient(
    const Lattice& halved, const std::vector<IntVec>& irreducible_neg2_images) {
  if (halved.rank() == 0 || halved.rank() > 2)
    throw UnsupportedRankError(
        "identify_quotient: only ranks 1 and 2 are classified, got rank " +
        std::to_string(halved.rank()));
  QuotientIdentification out;
  if (halved.rank() == 1) {
    if (halved.gram()(0, 0) == 1) {
      out.tag = SurfaceTag::P2;
      out.rule = "rank 1 generated by a class of self-intersection 1";
    } else {
      out.rule = "rank 1 but the generator has self-intersection " +
                 halved.gram()(0, 0).str();
    }
    return out;
  }
  const Int det = determinant(halved.gram());
  if (det != -1 || !halved.is_even()) {
    out.rule = "rank 2 but not even unimodular of determinant -1";
    return out;
  }
  for (const IntVec& c : irreducible_neg2_images)
    if (halved.norm(c) == -2) {
      out.tag = SurfaceTag::F2;
      out.rule = "even hyperbolic rank 2 with the declared irreducible class " +
                 halved.format_class(c) +
                 " of square -2: a ruled surface with a negative section";
      return out;
    }
  out.tag = SurfaceTag::P1xP1;
  out.rule =
      "even hyperbolic rank 2 and no declared irreducible class of square "
      "-2: both rulings are free";
  return out;
}

std::vector<TangencyGroup> tangency_summary(const CyclicAction& a,
                                            const CertStore& store) {
  std::vector<TangencyGroup> groups;
  for (const CertStore::Entry& e : store.entries()) {
    if (!e.nodal) continue;
    const IntVec w = a.apply(e.cls);
    if (w == e.cls || !store.is_nodal(w)) continue;
    if (!(e.cls < w)) continue;  // count each unordered pair once
    const IntVec line = e.cls + w;
    const Int contact = a.lattice().pair(e.cls, w);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const TangencyGroup& g) {
                             return g.line == line && g.contact == contact;
                           });
    if (it == groups.end()) {
      groups.push_back(TangencyGroup{line, contact, {}});
      it = std::prev(groups.end());
    }
    it->pairs.emplace_back(e.cls, w);
  }
  std::sort(groups.begin(), groups.end(),
            [](const TangencyGroup& x, const TangencyGroup& y) {
              return x.line != y.line ? x.line < y.line : x.contact < y.contact;
            });
  return groups;
}

std::size_t tritangent_check(const CyclicAction& a, const CertStore& store) {
  const Sublattice fixed = fixed_sublattice(a);
  if (fixed.rank() != 1)
    throw Error("tritangent_check: fixed lattice has rank " +
                std::to_string(fixed.rank()) + ", need 1");
  IntVec line = fixed.inclusion.column(0);
  if (store.ample() && a.lattice().pair(*store.ample(), line) < 0) line = -line;
  std::size_t count = 0;
  for (const TangencyGroup& g : tangency_summary(a, store))
    if ((g.line == line || g.line == -line) && g.contact == 3)
      count += g.pairs.size();
  return count;
}

}  // namespace k3orders
