#include "k3orders/pipeline.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "k3orders/action.hpp"
#include "k3orders/certificates.hpp"
#include "k3orders/cohomology.hpp"
#include "k3orders/errors.hpp"
#include "k3orders/normal_form.hpp"
#include "k3orders/orders.hpp"
#include "k3orders/signature.hpp"

namespace k3orders {

namespace {

Json signature_json(const Signature& s) {
  return Json::array({s.positive, s.negative, s.null});
}

void push_unique(std::vector<IntVec>& out, const IntVec& v) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

std::string rat_str(const Rat& q) {
  return rat_to_json(q).get<std::string>();
}

struct Runner {
  const Scenario& sc;
  std::size_t cap;
  Report rep;
  bool blocked = false;

  Lattice ambient;
  std::optional<Embedding> embedding;
  std::optional<CyclicAction> action;
  std::optional<CocycleClasses> classes;
  std::optional<CertStore> store;
  std::optional<Lattice> fixed_lattice;  // oriented basis, ambient = sublattice
  std::vector<IntVec> fixed_basis;       // in sublattice coordinates
  std::optional<Lattice> halved;
  std::optional<QuotientIdentification> quotient;

  explicit Runner(const Scenario& s, std::size_t list_cap)
      : sc(s), cap(list_cap), ambient(s.ambient()) {
    rep.scenario = sc.name.empty() ? "scenario" : sc.name;
  }

  // True (and records a skip line) when a structural failure already occurred.
  bool skip_if_blocked(const char* name) {
    if (blocked) rep.skip(name, "not run: an earlier stage failed");
    return blocked;
  }

  std::string cls(const IntVec& v) const { return sc.sublattice.format_class(v); }

  void stage_signature() {
    const Signature sig = signature(sc.sublattice.gram());
    Json sub;
    sub["rank"] = sc.sublattice.rank();
    sub["gram"] = matrix_to_json(sc.sublattice.gram());
    sub["signature"] = signature_json(sig);
    sub["determinant"] = int_to_json(determinant(sc.sublattice.gram()));
    sub["even"] = sc.sublattice.is_even();
    rep.data["sublattice"] = std::move(sub);

    Json amb;
    amb["rank"] = ambient.rank();
    amb["k3"] = sc.ambient_is_k3;
    amb["signature"] = signature_json(signature(ambient.gram()));
    amb["unimodular"] = ambient.is_unimodular();
    amb["even"] = ambient.is_even();
    rep.data["ambient"] = std::move(amb);

    if (sc.expect.signature) {
      if (sig == *sc.expect.signature) {
        rep.pass("sublattice-signature", to_string(sig));
      } else {
        rep.fail("sublattice-signature", "computed " + to_string(sig) +
                                             ", declared " +
                                             to_string(*sc.expect.signature));
      }
    } else {
      rep.pass("sublattice-signature", to_string(sig));
    }
  }

  void stage_embedding() {
    if (skip_if_blocked("embedding-form")) {
      rep.skip("embedding-primitive", "not run: an earlier stage failed");
      return;
    }
    try {
      embedding = Embedding::from_images(sc.sublattice, ambient, sc.embedding);
      rep.pass("embedding-form", "images reproduce the declared Gram matrix");
    } catch (const Error& e) {
      rep.fail("embedding-form", e.what());
      blocked = true;
      rep.skip("embedding-primitive", "not run: an earlier stage failed");
      return;
    }
    const PrimitivityResult prim = is_primitive(*embedding);
    Json emb;
    emb["matrix"] = matrix_to_json(embedding->matrix());
    emb["snf_diagonal"] = intvec_to_json(prim.snf_diagonal);
    emb["primitive"] = prim.primitive;
    rep.data["embedding"] = std::move(emb);
    if (prim.primitive) {
      rep.pass("embedding-primitive", "Smith diagonal is all ones");
    } else {
      rep.fail("embedding-primitive",
               "Smith diagonal " + to_string(prim.snf_diagonal) +
                   ": the image is not saturated");
      blocked = true;
    }
  }

  void stage_action() {
    if (skip_if_blocked("involution-action")) return;
    try {
      action = CyclicAction::with_declared_order(sc.sublattice, sc.involution,
                                                 sc.involution_order);
      rep.pass("involution-action",
               "isometry, matrix^" + std::to_string(sc.involution_order) +
                   " = identity");
    } catch (const Error& e) {
      rep.fail("involution-action", e.what());
      blocked = true;
    }
  }

  void stage_extension() {
    if (skip_if_blocked("involution-extends")) return;
    try {
      const ExtensionResult res = extends_to_ambient({*embedding, *action});
      Json ext;
      ext["extends"] = res.extends;
      if (res.extends) {
        ext["witness"] = matrix_to_json(res.matrix);
        rep.pass("involution-extends",
                 "integral ambient witness verified (acts as -1 on the "
                 "orthogonal complement)");
      } else {
        Json fe;
        fe["row"] = res.failed_entry->row + 1;
        fe["col"] = res.failed_entry->col + 1;
        fe["value"] = rat_to_json(res.failed_entry->value);
        ext["failed_entry"] = std::move(fe);
        rep.fail("involution-extends",
                 "entry (" + std::to_string(res.failed_entry->row + 1) + ", " +
                     std::to_string(res.failed_entry->col + 1) + ") = " +
                     rat_str(res.failed_entry->value) + " is not integral");
        blocked = true;
      }
      rep.data["extension"] = std::move(ext);
    } catch (const Error& e) {
      rep.fail("involution-extends", e.what());
      blocked = true;
    }
  }

  void stage_h1() {
    const bool want_match = sc.expect.h1_factors.has_value();
    const bool want_cover = sc.expect.h1_generators.has_value();
    if (skip_if_blocked("h1-group")) {
      if (want_match) rep.skip("h1-match", "not run: an earlier stage failed");
      if (want_cover) {
        rep.skip("h1-generators-cover", "not run: an earlier stage failed");
      }
      return;
    }
    try {
      classes.emplace(*action);
    } catch (const Error& e) {
      rep.fail("h1-group", e.what());
      blocked = true;
      if (want_match) rep.skip("h1-match", "not run: an earlier stage failed");
      if (want_cover) {
        rep.skip("h1-generators-cover", "not run: an earlier stage failed");
      }
      return;
    }
    const FinAbGroup& g = classes->group();
    Json h;
    h["group"] = g.to_string();
    Json factors = Json::array();
    for (const Int& f : g.invariant_factors) factors.push_back(int_to_json(f));
    h["factors"] = std::move(factors);
    Json gens = Json::array();
    for (const IntVec& v : g.generators) gens.push_back(intvec_to_json(v));
    h["generators"] = std::move(gens);
    Json kb = Json::array();
    for (const IntVec& v : classes->kernel_basis()) kb.push_back(intvec_to_json(v));
    h["kernel_basis"] = std::move(kb);
    rep.data["h1"] = std::move(h);
    rep.pass("h1-group", g.to_string());

    if (want_match) {
      if (g.invariant_factors == *sc.expect.h1_factors) {
        rep.pass("h1-match", "invariant factors match: " + g.to_string());
      } else {
        FinAbGroup declared{*sc.expect.h1_factors, {}};
        rep.fail("h1-match", "computed " + g.to_string() + ", declared " +
                                 declared.to_string());
      }
    }
    if (want_cover) {
      std::string why;
      for (const IntVec& v : *sc.expect.h1_generators) {
        if (v.size() != sc.sublattice.rank()) {
          why = "declared generator has wrong length";
          break;
        }
        if (!classes->is_cocycle(v)) {
          why = cls(v) + " is not a cocycle";
          break;
        }
      }
      if (why.empty() && !classes->covers(*sc.expect.h1_generators)) {
        why = "declared classes do not generate the group";
      }
      if (why.empty()) {
        rep.pass("h1-generators-cover",
                 std::to_string(sc.expect.h1_generators->size()) +
                     " declared cocycles cover every class");
      } else {
        rep.fail("h1-generators-cover", why);
      }
    }
  }

  std::vector<IntVec> basis_vectors() const {
    std::vector<IntVec> b;
    for (std::size_t i = 0; i < sc.sublattice.rank(); ++i) {
      b.push_back(unit_vector(sc.sublattice.rank(), i));
    }
    return b;
  }

  void stage_certificates() {
    const bool want_nodal = sc.expect.nodal_count.has_value();
    if (!sc.effective_seed) {
      if (sc.ample_candidate) {
        rep.fail("ample-certified", "no effective_seed declared");
        blocked = true;
      }
      if (want_nodal) rep.fail("nodal-classes", "no effective_seed declared");
      return;
    }
    if (skip_if_blocked("effective-chain")) {
      if (sc.ample_candidate) {
        rep.skip("ample-certified", "not run: an earlier stage failed");
      }
      if (want_nodal) rep.skip("nodal-classes", "not run: an earlier stage failed");
      return;
    }

    store.emplace(sc.sublattice);
    std::vector<IntVec> candidates;
    push_unique(candidates, *sc.effective_seed);
    for (const IntVec& b : basis_vectors()) {
      push_unique(candidates, b);
      push_unique(candidates, action->apply(b));
    }
    if (sc.ample_candidate) {
      push_unique(candidates, *sc.ample_candidate);
      for (const IntVec& b : basis_vectors()) {
        push_unique(candidates, *sc.ample_candidate - b);
        push_unique(candidates, *sc.ample_candidate - action->apply(b));
      }
    }
    try {
      store->seed_effective(*sc.effective_seed);
    } catch (const Error& e) {
      rep.fail("effective-chain", e.what());
      blocked = true;
      if (sc.ample_candidate) {
        rep.skip("ample-certified", "not run: an earlier stage failed");
      }
      if (want_nodal) rep.skip("nodal-classes", "not run: an earlier stage failed");
      return;
    }
    bool progress = true;
    while (progress) {
      progress = false;
      for (const IntVec& v : candidates) {
        if (store->is_effective(v)) continue;
        if (sc.sublattice.norm(v) < -2) continue;
        if (store->derive_effective(v)) progress = true;
      }
    }
    std::size_t effective = 0;
    Json eff = Json::array();
    for (const CertStore::Entry& en : store->entries()) {
      if (!en.effective) continue;
      ++effective;
      Json item;
      item["class"] = intvec_to_json(en.cls);
      item["formatted"] = cls(en.cls);
      item["rule"] = en.just.rule;
      if (en.just.partner) item["partner"] = intvec_to_json(*en.just.partner);
      if (en.just.pairing) item["pairing"] = int_to_json(*en.just.pairing);
      eff.push_back(std::move(item));
    }
    rep.data["certificates"]["effective"] = std::move(eff);
    rep.pass("effective-chain",
             std::to_string(effective) + " classes certified effective from " +
                 cls(*sc.effective_seed));

    bool ample_ok = false;
    if (sc.ample_candidate) {
      try {
        const AmpleCertificate cert =
            store->certify_ample(*sc.ample_candidate, basis_vectors());
        Json aj;
        aj["candidate"] = intvec_to_json(*sc.ample_candidate);
        aj["ok"] = cert.ok;
        aj["s_squared"] = int_to_json(cert.s_squared);
        Json lines = Json::array();
        for (const auto& line : cert.lines) {
          Json lj;
          lj["generator"] = intvec_to_json(line.generator);
          lj["s_dot_g"] = int_to_json(line.s_dot_g);
          lj["s_dot_residual"] = int_to_json(line.s_dot_residual);
          lines.push_back(std::move(lj));
        }
        aj["lines"] = std::move(lines);
        if (!cert.ok) aj["failure"] = cert.failure;
        rep.data["certificates"]["ample"] = std::move(aj);
        if (cert.ok) {
          ample_ok = true;
          rep.pass("ample-certified",
                   cls(*sc.ample_candidate) + ": square " +
                       cert.s_squared.str() +
                       ", positive degree on every certified effective class");
        } else {
          rep.fail("ample-certified", cert.failure);
          blocked = true;
        }
      } catch (const Error& e) {
        rep.fail("ample-certified", e.what());
        blocked = true;
      }
    }

    if (sc.ample_candidate && ample_ok) {
      std::vector<IntVec> nodal_candidates;
      for (const IntVec& b : basis_vectors()) {
        push_unique(nodal_candidates, b);
        push_unique(nodal_candidates, action->apply(b));
      }
      for (const IntVec& v : nodal_candidates) {
        if (store->is_effective(v)) store->certify_nodal(v);
      }
      const std::vector<IntVec> nodal = store->nodal_classes();
      Json nj = Json::array();
      for (const IntVec& v : nodal) {
        Json item;
        item["class"] = intvec_to_json(v);
        item["formatted"] = cls(v);
        nj.push_back(std::move(item));
      }
      rep.data["certificates"]["nodal"] = std::move(nj);
      if (want_nodal) {
        if (nodal.size() == *sc.expect.nodal_count) {
          rep.pass("nodal-classes", std::to_string(nodal.size()) +
                                        " irreducible (-2)-classes certified");
        } else {
          rep.fail("nodal-classes",
                   "certified " + std::to_string(nodal.size()) +
                       ", declared " + std::to_string(*sc.expect.nodal_count));
        }
      } else {
        rep.pass("nodal-classes", std::to_string(nodal.size()) +
                                      " irreducible (-2)-classes certified");
      }
    } else if (want_nodal) {
      rep.skip("nodal-classes", "not run: an earlier stage failed");
    }
  }

  void stage_fixed() {
    const bool want_halved = sc.expect.halved_gram.has_value();
    if (skip_if_blocked("fixed-halved")) {
      if (want_halved) rep.skip("halved-match", "not run: an earlier stage failed");
      return;
    }
    const Sublattice raw = fixed_sublattice(*action);
    // Normalize to the Hermite staircase basis so reports and declared order
    // data use one canonical basis, oriented towards the ample cone.
    fixed_basis.clear();
    if (raw.rank() > 0) {
      const HnfResult hnf = hermite_normal_form(raw.inclusion.transposed());
      for (std::size_t i = 0; i < raw.rank(); ++i) {
        fixed_basis.push_back(hnf.h.row(i));
      }
    }
    if (sc.ample_candidate) {
      for (IntVec& b : fixed_basis) {
        if (sc.sublattice.pair(*sc.ample_candidate, b) < 0) b = -b;
      }
    }
    const std::size_t k = fixed_basis.size();
    IntMatrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        gram(i, j) = sc.sublattice.pair(fixed_basis[i], fixed_basis[j]);
      }
    }
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= k; ++i) labels.push_back("f" + std::to_string(i));
    fixed_lattice = Lattice(gram, labels);

    Json fj;
    fj["rank"] = k;
    Json basis = Json::array();
    Json formatted = Json::array();
    for (const IntVec& b : fixed_basis) {
      basis.push_back(intvec_to_json(b));
      formatted.push_back(cls(b));
    }
    fj["basis"] = std::move(basis);
    fj["basis_formatted"] = std::move(formatted);
    fj["gram"] = matrix_to_json(gram);

    try {
      halved = halved_form(*fixed_lattice);
      fj["halved_gram"] = matrix_to_json(halved->gram());
      rep.data["fixed"] = std::move(fj);
      rep.pass("fixed-halved", "fixed rank " + std::to_string(k) +
                                   ", halved form is integral");
    } catch (const Error& e) {
      rep.data["fixed"] = std::move(fj);
      rep.fail("fixed-halved", e.what());
      blocked = true;
      if (want_halved) rep.skip("halved-match", "not run: an earlier stage failed");
      return;
    }
    if (want_halved) {
      if (halved->gram() == *sc.expect.halved_gram) {
        rep.pass("halved-match", "halved Gram matrix matches the declaration");
      } else {
        rep.fail("halved-match", "computed " + to_string(halved->gram()) +
                                     ", declared " +
                                     to_string(*sc.expect.halved_gram));
      }
    }
  }

  void stage_quotient() {
    if (skip_if_blocked("quotient-identified")) return;
    try {
      quotient = identify_quotient(*halved, sc.irreducible_neg2_images);
    } catch (const Error& e) {
      rep.fail("quotient-identified", e.what());
      return;
    }
    Json qj;
    qj["tag"] = to_string(quotient->tag);
    qj["rule"] = quotient->rule;
    rep.data["quotient"] = std::move(qj);
    const std::string detail = to_string(quotient->tag) + " (" + quotient->rule + ")";
    if (sc.expect.quotient) {
      if (quotient->tag == *sc.expect.quotient) {
        rep.pass("quotient-identified", detail);
      } else {
        rep.fail("quotient-identified", "computed " + to_string(quotient->tag) +
                                            ", declared " +
                                            to_string(*sc.expect.quotient));
      }
    } else {
      rep.pass("quotient-identified", detail);
    }
  }

  void stage_tangency() {
    const bool want = sc.expect.tangency.has_value();
    if (blocked || !store || !store->ample()) {
      if (want) {
        if (blocked) {
          rep.skip("tangency-pattern", "not run: an earlier stage failed");
        } else {
          rep.fail("tangency-pattern", "no ample certificate available");
        }
      }
      return;
    }
    const std::vector<TangencyGroup> groups = tangency_summary(*action, *store);
    Json tj = Json::array();
    for (const TangencyGroup& g : groups) {
      Json gj;
      gj["line"] = intvec_to_json(g.line);
      gj["line_formatted"] = cls(g.line);
      gj["contact"] = int_to_json(g.contact);
      Json pairs = Json::array();
      for (const auto& [v, w] : g.pairs) {
        pairs.push_back(Json::array({intvec_to_json(v), intvec_to_json(w)}));
      }
      gj["pairs"] = std::move(pairs);
      tj.push_back(std::move(gj));
    }
    rep.data["tangency"] = std::move(tj);
    if (fixed_lattice && fixed_lattice->rank() == 1) {
      rep.data["tritangents"] = tritangent_check(*action, *store);
    }
    if (want) {
      const TangencyExpectation& te = *sc.expect.tangency;
      const TangencyGroup* found = nullptr;
      for (const TangencyGroup& g : groups) {
        if (g.line == te.line && g.contact == te.contact) {
          found = &g;
          break;
        }
      }
      if (found && found->pairs.size() == te.pairs) {
        rep.pass("tangency-pattern",
                 std::to_string(te.pairs) + " nodal pairs over " + cls(te.line) +
                     " with contact " + te.contact.str());
      } else if (found) {
        rep.fail("tangency-pattern",
                 "found " + std::to_string(found->pairs.size()) +
                     " pairs over " + cls(te.line) + ", declared " +
                     std::to_string(te.pairs));
      } else {
        rep.fail("tangency-pattern",
                 "no nodal pairs over " + cls(te.line) + " with contact " +
                     te.contact.str());
      }
    }
  }

  void stage_fixed_components() {
    if (!sc.fixed_component_rows) return;
    if (skip_if_blocked("fixed-component-exclusion")) return;
    std::vector<IntVec> rows;
    for (std::size_t r : *sc.fixed_component_rows) {
      rows.push_back(sc.sublattice.gram().row(r - 1));
    }
    const std::vector<IntVec> kernel = integer_kernel(IntMatrix::from_rows(rows));
    Json kj = Json::array();
    std::string span;
    for (const IntVec& v : kernel) {
      kj.push_back(intvec_to_json(v));
      if (!span.empty()) span += ", ";
      span += cls(v);
    }
    rep.data["fixed_component_kernel"] = std::move(kj);
    if (span.empty()) span = "0";
    if (sc.expect.fixed_component_kernel) {
      const IntMatrix computed =
          kernel.empty() ? IntMatrix(1, sc.sublattice.rank())
                         : IntMatrix::from_rows(kernel);
      const IntMatrix declared =
          IntMatrix::from_rows(*sc.expect.fixed_component_kernel);
      if (same_row_span(computed, declared)) {
        rep.pass("fixed-component-exclusion",
                 "decomposition system solved only by multiples of " + span);
      } else {
        rep.fail("fixed-component-exclusion",
                 "solution span " + span + " differs from the declared span");
      }
    } else {
      rep.pass("fixed-component-exclusion",
               "decomposition system solved only by multiples of " + span);
    }
  }

  void stage_orders() {
    if (!sc.order_data) return;
    if (skip_if_blocked("canonical-order-trivial")) {
      rep.skip("order-count", "not run: an earlier stage failed");
      return;
    }
    const OrderData& od = *sc.order_data;
    Json oj;
    Json assumptions = Json::array();
    for (const OrderAssumption& a : order_assumptions()) {
      Json aj;
      aj["tag"] = a.tag;
      aj["statement"] = a.statement;
      assumptions.push_back(std::move(aj));
    }
    oj["assumptions"] = std::move(assumptions);

    bool shape_ok = od.canonical.size() == halved->rank();
    for (const RamificationDatum& rd : od.ramification) {
      if (rd.divisor_class.size() != halved->rank()) shape_ok = false;
    }
    if (!shape_ok) {
      rep.fail("canonical-order-trivial",
               "order data must be given on the rank-" +
                   std::to_string(halved->rank()) + " quotient basis");
      rep.data["orders"] = std::move(oj);
    } else {
      SurfaceModel model = SurfaceModel::custom(*halved, od.canonical);
      if (quotient) model.tag = quotient->tag;
      const OrderDescriptor desc{model, od.ramification};
      const RatVec ka = canonical_order_class(desc);
      const bool ncy = is_numerically_cy(desc);
      oj["canonical_order_class"] = ratvec_to_json(ka);
      oj["numerically_cy"] = ncy;
      Json ram = Json::array();
      for (const RamificationDatum& rd : od.ramification) {
        Json rj;
        rj["class"] = intvec_to_json(rd.divisor_class);
        rj["index"] = rd.index;
        ram.push_back(std::move(rj));
      }
      oj["ramification"] = std::move(ram);
      rep.data["orders"] = std::move(oj);
      if (ncy) {
        rep.pass("canonical-order-trivial",
                 "K_A pairs to zero with the whole quotient lattice");
      } else {
        std::string kas = "(";
        for (std::size_t i = 0; i < ka.size(); ++i) {
          if (i) kas += ", ";
          kas += rat_str(ka[i]);
        }
        kas += ")";
        rep.fail("canonical-order-trivial",
                 "K_A = " + kas + " is not numerically trivial");
      }
    }

    try {
      const OrderEnumeration en = enumerate_orders(classes->group(), *action, cap);
      Json ej;
      ej["total"] = int_to_json(en.total);
      ej["truncated"] = en.truncated;
      Json list = Json::array();
      for (const IntVec& v : en.classes) {
        Json item;
        item["class"] = intvec_to_json(v);
        item["formatted"] = cls(v);
        list.push_back(std::move(item));
      }
      ej["classes"] = std::move(list);
      rep.data["orders"]["enumeration"] = std::move(ej);
      std::string detail = en.total.str() + " orders (one per nonzero class)";
      if (en.truncated) {
        detail += ", list truncated at " + std::to_string(cap);
      }
      if (sc.expect.order_count) {
        if (en.total == *sc.expect.order_count) {
          rep.pass("order-count", detail);
        } else {
          rep.fail("order-count", "computed " + en.total.str() + ", declared " +
                                      sc.expect.order_count->str());
        }
      } else {
        rep.pass("order-count", detail);
      }
    } catch (const Error& e) {
      rep.fail("order-count", e.what());
    }
  }

  Report run() {
    stage_signature();
    stage_embedding();
    stage_action();
    stage_extension();
    stage_h1();
    stage_certificates();
    stage_fixed();
    stage_quotient();
    stage_tangency();
    stage_fixed_components();
    stage_orders();
    return std::move(rep);
  }
};

}  // namespace

Report run_scenario(const Scenario& s, std::size_t list_cap) {
  return Runner(s, list_cap).run();
}

}  // namespace k3orders
