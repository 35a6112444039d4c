#include "k3orders/scenario.hpp"

#include <cstddef>

#include "k3orders/errors.hpp"

namespace k3orders {

namespace {

// Leading n x n blocks of this matrix are the surface lattices of the
// branched-double-plane family for 3 <= n <= 18.
// clang-format off
const long long kDoublePlaneGram[18][18] = {
  {-2,  3,  0,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1},
  { 3, -2,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
  { 0,  1, -2,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
  { 1,  0,  1, -2,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
  { 1,  0,  0,  1, -2,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
  { 1,  0,  0,  0,  1, -2,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
  { 1,  0,  0,  0,  0,  1, -2,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
  { 1,  0,  0,  0,  0,  0,  1, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0},
  { 1,  0,  0,  0,  0,  0,  0,  0, -2,  0,  0,  1,  0,  0,  0,  0,  0,  0},
  { 1,  0,  0,  0,  0,  0,  0,  0,  0, -2,  1,  0,  0,  0,  0,  0,  0,  0},
  { 1,  0,  0,  0,  0,  0,  0,  0,  0,  1, -2,  1,  0,  0,  0,  0,  0,  0},
  { 1,  0,  0,  0,  0,  0,  0,  0,  1,  0,  1, -2,  1,  0,  0,  0,  0,  0},
  { 1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  1, -2,  1,  0,  0,  0,  0},
  { 1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  1, -2,  1,  0,  0,  0},
  { 1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  1, -2,  1,  0,  0},
  { 1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  1, -2,  0,  0},
  { 1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, -2,  0},
  { 1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, -2},
};
// clang-format on

std::vector<std::string> s_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("s" + std::to_string(i));
  return labels;
}

IntVec ambient_unit(std::size_t i) { return unit_vector(22, i); }

SurfaceTag surface_tag_from_string(const std::string& s,
                                   const std::string& path) {
  if (s == "P2") return SurfaceTag::P2;
  if (s == "P1xP1") return SurfaceTag::P1xP1;
  if (s == "F2") return SurfaceTag::F2;
  if (s == "undetermined") return SurfaceTag::Undetermined;
  throw SchemaError(path,
                    "unknown surface tag \"" + s +
                        "\" (expected P2, P1xP1, F2 or undetermined)");
}

std::size_t size_from_json(const Json& j, const std::string& path) {
  Int x = int_from_json(j, path);
  if (x < 0) throw SchemaError(path, "expected a non-negative integer");
  return static_cast<std::size_t>(x);
}

IntMatrix symmetric_matrix_from_json(const Json& j, const std::string& path) {
  IntMatrix m = matrix_from_json(j, path);
  if (m.rows() != m.cols()) throw SchemaError(path, "expected a square matrix");
  if (!m.is_symmetric()) throw SchemaError(path, "matrix is not symmetric");
  return m;
}

IntVec sized_vec(const Json& j, const std::string& path, std::size_t n) {
  IntVec v = intvec_from_json(j, path);
  if (v.size() != n) {
    throw SchemaError(path, "expected " + std::to_string(n) + " entries, got " +
                                std::to_string(v.size()));
  }
  return v;
}

Expectations expectations_from_json(const Json& j, std::size_t rank) {
  Expectations e;
  const std::string base = "expect";
  if (j.contains("signature")) {
    const Json& s = j["signature"];
    if (!s.is_array() || s.size() != 3) {
      throw SchemaError(base + ".signature", "expected [positive, negative, null]");
    }
    e.signature = Signature{size_from_json(s[0], base + ".signature[0]"),
                            size_from_json(s[1], base + ".signature[1]"),
                            size_from_json(s[2], base + ".signature[2]")};
  }
  if (j.contains("h1_factors")) {
    IntVec f = intvec_from_json(j["h1_factors"], base + ".h1_factors");
    e.h1_factors = std::vector<Int>(f.begin(), f.end());
  }
  if (j.contains("h1_generators")) {
    const Json& g = j["h1_generators"];
    if (!g.is_array()) throw SchemaError(base + ".h1_generators", "expected an array");
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < g.size(); ++i) {
      gens.push_back(sized_vec(g[i], base + ".h1_generators[" + std::to_string(i) + "]", rank));
    }
    e.h1_generators = std::move(gens);
  }
  if (j.contains("quotient")) {
    const Json& q = j["quotient"];
    if (!q.is_string()) throw SchemaError(base + ".quotient", "expected a string");
    e.quotient = surface_tag_from_string(q.get<std::string>(), base + ".quotient");
  }
  if (j.contains("order_count")) {
    e.order_count = int_from_json(j["order_count"], base + ".order_count");
  }
  if (j.contains("nodal_count")) {
    e.nodal_count = size_from_json(j["nodal_count"], base + ".nodal_count");
  }
  if (j.contains("tangency")) {
    const Json& t = j["tangency"];
    TangencyExpectation te;
    te.line = sized_vec(require_field(t, "line", base + ".tangency"),
                        base + ".tangency.line", rank);
    te.contact = int_from_json(require_field(t, "contact", base + ".tangency"),
                               base + ".tangency.contact");
    te.pairs = size_from_json(require_field(t, "pairs", base + ".tangency"),
                              base + ".tangency.pairs");
    e.tangency = std::move(te);
  }
  if (j.contains("halved_gram")) {
    e.halved_gram = symmetric_matrix_from_json(j["halved_gram"], base + ".halved_gram");
  }
  if (j.contains("fixed_component_kernel")) {
    const Json& k = j["fixed_component_kernel"];
    if (!k.is_array()) {
      throw SchemaError(base + ".fixed_component_kernel", "expected an array");
    }
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < k.size(); ++i) {
      rows.push_back(sized_vec(
          k[i], base + ".fixed_component_kernel[" + std::to_string(i) + "]", rank));
    }
    e.fixed_component_kernel = std::move(rows);
  }
  return e;
}

Json expectations_to_json(const Expectations& e) {
  Json j = Json::object();
  if (e.signature) {
    j["signature"] = Json::array({e.signature->positive, e.signature->negative,
                                  e.signature->null});
  }
  if (e.h1_factors) {
    Json a = Json::array();
    for (const Int& f : *e.h1_factors) a.push_back(int_to_json(f));
    j["h1_factors"] = std::move(a);
  }
  if (e.h1_generators) {
    Json a = Json::array();
    for (const IntVec& g : *e.h1_generators) a.push_back(intvec_to_json(g));
    j["h1_generators"] = std::move(a);
  }
  if (e.quotient) j["quotient"] = to_string(*e.quotient);
  if (e.order_count) j["order_count"] = int_to_json(*e.order_count);
  if (e.nodal_count) j["nodal_count"] = *e.nodal_count;
  if (e.tangency) {
    Json t;
    t["line"] = intvec_to_json(e.tangency->line);
    t["contact"] = int_to_json(e.tangency->contact);
    t["pairs"] = e.tangency->pairs;
    j["tangency"] = std::move(t);
  }
  if (e.halved_gram) j["halved_gram"] = matrix_to_json(*e.halved_gram);
  if (e.fixed_component_kernel) {
    Json a = Json::array();
    for (const IntVec& r : *e.fixed_component_kernel) a.push_back(intvec_to_json(r));
    j["fixed_component_kernel"] = std::move(a);
  }
  return j;
}

}  // namespace

Lattice Scenario::ambient() const {
  if (ambient_is_k3) return k3_lattice();
  return Lattice(*ambient_gram);
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  if (!j.is_object()) throw SchemaError("", "top level must be an object");
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SchemaError("name", "expected a string");
    s.name = j["name"].get<std::string>();
  }

  const Json& ambient = require_field(j, "ambient", "");
  if (ambient.is_string()) {
    if (ambient.get<std::string>() != "K3") {
      throw SchemaError("ambient", "expected \"K3\" or {\"gram\": ...}");
    }
    s.ambient_is_k3 = true;
  } else {
    s.ambient_is_k3 = false;
    s.ambient_gram = symmetric_matrix_from_json(
        require_field(ambient, "gram", "ambient"), "ambient.gram");
  }
  const std::size_t ambient_rank = s.ambient_is_k3 ? 22 : s.ambient_gram->rows();

  const Json& sub = require_field(j, "sublattice", "");
  IntMatrix gram = symmetric_matrix_from_json(
      require_field(sub, "gram", "sublattice"), "sublattice.gram");
  const std::size_t rank = gram.rows();
  std::vector<std::string> labels;
  if (sub.contains("labels")) {
    const Json& l = sub["labels"];
    if (!l.is_array() || l.size() != rank) {
      throw SchemaError("sublattice.labels",
                        "expected " + std::to_string(rank) + " labels");
    }
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_string()) {
        throw SchemaError("sublattice.labels[" + std::to_string(i) + "]",
                          "expected a string");
      }
      labels.push_back(l[i].get<std::string>());
    }
  }
  s.sublattice = Lattice(std::move(gram), std::move(labels));

  const Json& emb = require_field(j, "embedding", "");
  if (!emb.is_array() || emb.size() != rank) {
    throw SchemaError("embedding", "expected one image per basis vector (" +
                                       std::to_string(rank) + " rows)");
  }
  for (std::size_t i = 0; i < emb.size(); ++i) {
    s.embedding.push_back(sized_vec(emb[i], "embedding[" + std::to_string(i) + "]",
                                    ambient_rank));
  }

  const Json& inv = require_field(j, "involution", "");
  IntMatrix m = matrix_from_json(require_field(inv, "matrix", "involution"),
                                 "involution.matrix");
  if (m.rows() != rank || m.cols() != rank) {
    throw SchemaError("involution.matrix",
                      "expected a " + std::to_string(rank) + " x " +
                          std::to_string(rank) + " matrix");
  }
  s.involution = std::move(m);
  Int order = int_from_json(require_field(inv, "order", "involution"),
                            "involution.order");
  if (order < 1 || order > 1000000) {
    throw SchemaError("involution.order", "expected an order in [1, 10^6]");
  }
  s.involution_order = static_cast<unsigned>(order);

  if (j.contains("effective_seed")) {
    s.effective_seed = sized_vec(j["effective_seed"], "effective_seed", rank);
  }
  if (j.contains("ample_candidate")) {
    s.ample_candidate = sized_vec(j["ample_candidate"], "ample_candidate", rank);
  }
  if (j.contains("surface_hints")) {
    const Json& h = j["surface_hints"];
    if (!h.is_object()) throw SchemaError("surface_hints", "expected an object");
    if (h.contains("irreducible_neg2_images")) {
      const Json& a = h["irreducible_neg2_images"];
      if (!a.is_array()) {
        throw SchemaError("surface_hints.irreducible_neg2_images",
                          "expected an array");
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        s.irreducible_neg2_images.push_back(intvec_from_json(
            a[i], "surface_hints.irreducible_neg2_images[" + std::to_string(i) + "]"));
      }
    }
  }
  if (j.contains("fixed_component_rows")) {
    const Json& r = j["fixed_component_rows"];
    if (!r.is_array()) throw SchemaError("fixed_component_rows", "expected an array");
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string path = "fixed_component_rows[" + std::to_string(i) + "]";
      std::size_t row = size_from_json(r[i], path);
      if (row < 1 || row > rank) {
        throw SchemaError(path, "row index out of range 1.." + std::to_string(rank));
      }
      rows.push_back(row);
    }
    s.fixed_component_rows = std::move(rows);
  }
  if (j.contains("order_data")) {
    const Json& od = j["order_data"];
    OrderData data;
    data.canonical = intvec_from_json(require_field(od, "canonical", "order_data"),
                                      "order_data.canonical");
    const Json& ram = require_field(od, "ramification", "order_data");
    if (!ram.is_array()) {
      throw SchemaError("order_data.ramification", "expected an array");
    }
    for (std::size_t i = 0; i < ram.size(); ++i) {
      const std::string path = "order_data.ramification[" + std::to_string(i) + "]";
      RamificationDatum rd;
      rd.divisor_class = intvec_from_json(require_field(ram[i], "class", path),
                                          path + ".class");
      Int idx = int_from_json(require_field(ram[i], "index", path), path + ".index");
      if (idx < 1 || idx > 1000000) {
        throw SchemaError(path + ".index", "expected an index in [1, 10^6]");
      }
      rd.index = static_cast<unsigned>(idx);
      data.ramification.push_back(std::move(rd));
    }
    s.order_data = std::move(data);
  }
  if (j.contains("expect")) {
    const Json& e = j["expect"];
    if (!e.is_object()) throw SchemaError("expect", "expected an object");
    s.expect = expectations_from_json(e, rank);
  }
  return s;
}

Json scenario_to_json(const Scenario& s) {
  Json j;
  if (!s.name.empty()) j["name"] = s.name;
  if (s.ambient_is_k3) {
    j["ambient"] = "K3";
  } else {
    Json a;
    a["gram"] = matrix_to_json(*s.ambient_gram);
    j["ambient"] = std::move(a);
  }
  Json sub;
  sub["gram"] = matrix_to_json(s.sublattice.gram());
  if (!s.sublattice.labels().empty()) sub["labels"] = s.sublattice.labels();
  j["sublattice"] = std::move(sub);
  Json emb = Json::array();
  for (const IntVec& v : s.embedding) emb.push_back(intvec_to_json(v));
  j["embedding"] = std::move(emb);
  Json inv;
  inv["matrix"] = matrix_to_json(s.involution);
  inv["order"] = s.involution_order;
  j["involution"] = std::move(inv);
  if (s.effective_seed) j["effective_seed"] = intvec_to_json(*s.effective_seed);
  if (s.ample_candidate) j["ample_candidate"] = intvec_to_json(*s.ample_candidate);
  if (!s.irreducible_neg2_images.empty()) {
    Json a = Json::array();
    for (const IntVec& v : s.irreducible_neg2_images) a.push_back(intvec_to_json(v));
    Json h;
    h["irreducible_neg2_images"] = std::move(a);
    j["surface_hints"] = std::move(h);
  }
  if (s.fixed_component_rows) {
    j["fixed_component_rows"] = *s.fixed_component_rows;
  }
  if (s.order_data) {
    Json od;
    od["canonical"] = intvec_to_json(s.order_data->canonical);
    Json ram = Json::array();
    for (const RamificationDatum& rd : s.order_data->ramification) {
      Json r;
      r["class"] = intvec_to_json(rd.divisor_class);
      r["index"] = rd.index;
      ram.push_back(std::move(r));
    }
    od["ramification"] = std::move(ram);
    j["order_data"] = std::move(od);
  }
  Json e = expectations_to_json(s.expect);
  if (!e.empty()) j["expect"] = std::move(e);
  return j;
}

Scenario builtin_p2_sextic(std::size_t n) {
  if (n < 3 || n > 18) {
    throw OutOfRangeNError("n must be between 3 and 18, got " + std::to_string(n));
  }
  Scenario s;
  s.name = "p2-sextic-n" + std::to_string(n);
  s.ambient_is_k3 = true;

  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec row;
    for (std::size_t k = 0; k < n; ++k) row.push_back(kDoublePlaneGram[i][k]);
    rows.push_back(std::move(row));
  }
  s.sublattice = Lattice(IntMatrix::from_rows(rows), s_labels(n));

  // Basis images inside E8 + E8 + U + U + U (indices 16..21 are the three
  // hyperbolic planes).
  for (std::size_t i = 0; i < n; ++i) {
    IntVec img;
    if (i == 0) {
      img = ambient_unit(0) + ambient_unit(16);
    } else if (i == 1) {
      img = ambient_unit(1) + Int(3) * ambient_unit(17);
    } else if (i == 2 || i == 3) {
      img = ambient_unit(i);
    } else if (i <= 15) {
      img = ambient_unit(i) + ambient_unit(17);
    } else if (i == 16) {
      img = ambient_unit(17) + ambient_unit(18) - ambient_unit(19);
    } else {
      img = ambient_unit(17) + ambient_unit(20) - ambient_unit(21);
    }
    s.embedding.push_back(std::move(img));
  }

  // phi(s1) = s2, phi(s2) = s1, phi(si) = s1 + s2 - si.
  std::vector<IntVec> cols;
  cols.push_back(unit_vector(n, 1));
  cols.push_back(unit_vector(n, 0));
  for (std::size_t i = 2; i < n; ++i) {
    cols.push_back(unit_vector(n, 0) + unit_vector(n, 1) - unit_vector(n, i));
  }
  s.involution = IntMatrix::from_columns(cols);
  s.involution_order = 2;

  s.effective_seed = unit_vector(n, 0);
  s.ample_candidate = unit_vector(n, 0) + unit_vector(n, 1);

  OrderData od;
  od.canonical = IntVec{Int(-3)};
  od.ramification.push_back({IntVec{Int(6)}, 2});
  s.order_data = std::move(od);

  Expectations& e = s.expect;
  e.signature = Signature{1, n - 1, 0};
  e.h1_factors = std::vector<Int>(n - 2, Int(2));
  std::vector<IntVec> gens;
  for (std::size_t i = 2; i < n; ++i) {
    gens.push_back(unit_vector(n, 0) - unit_vector(n, i));
  }
  e.h1_generators = std::move(gens);
  e.quotient = SurfaceTag::P2;
  e.order_count = (Int(1) << (n - 2)) - 1;
  e.nodal_count = 2 * n - 2;
  e.tangency = TangencyExpectation{unit_vector(n, 0) + unit_vector(n, 1), Int(3),
                                   n - 1};
  e.halved_gram = IntMatrix{{1}};
  return s;
}

Scenario builtin_quadric() {
  Scenario s;
  s.name = "quadric";
  s.ambient_is_k3 = true;
  s.sublattice = Lattice(IntMatrix{{0, 1, 1, 1},
                                   {1, -2, 2, 0},
                                   {1, 2, -2, 0},
                                   {1, 0, 0, -2}},
                         s_labels(4));
  s.embedding = {
      ambient_unit(16) + ambient_unit(18),
      ambient_unit(0) + ambient_unit(17) + ambient_unit(20),
      ambient_unit(3) + ambient_unit(17) + ambient_unit(21),
      ambient_unit(1) + ambient_unit(17),
  };
  // phi fixes s1, swaps s2 and s3, and reflects s4 to s2 + s3 - s4.
  s.involution = IntMatrix::from_columns({
      IntVec{1, 0, 0, 0},
      IntVec{0, 0, 1, 0},
      IntVec{0, 1, 0, 0},
      IntVec{0, 1, 1, -1},
  });
  s.involution_order = 2;
  s.effective_seed = IntVec{1, 0, 0, 0};
  s.ample_candidate = IntVec{1, 1, 1, 0};
  s.fixed_component_rows = std::vector<std::size_t>{2, 3, 4};

  OrderData od;
  od.canonical = IntVec{-2, -2};
  od.ramification.push_back({IntVec{4, 4}, 2});
  s.order_data = std::move(od);

  Expectations& e = s.expect;
  e.signature = Signature{1, 3, 0};
  e.h1_factors = std::vector<Int>{Int(2)};
  e.h1_generators = std::vector<IntVec>{IntVec{0, 1, 0, -1}};
  e.quotient = SurfaceTag::P1xP1;
  e.order_count = Int(1);
  e.nodal_count = 4;
  e.tangency = TangencyExpectation{IntVec{0, 1, 1, 0}, Int(2), 2};
  e.halved_gram = IntMatrix{{0, 1}, {1, 0}};
  e.fixed_component_kernel = std::vector<IntVec>{IntVec{0, 1, 1, 0}};
  return s;
}

Scenario builtin_hirzebruch2() {
  Scenario s;
  s.name = "hirzebruch2";
  s.ambient_is_k3 = true;
  s.sublattice = Lattice(IntMatrix{{-2, 0, 1, 0, 1},
                                   {0, -2, 0, 1, 0},
                                   {1, 0, -2, 2, 0},
                                   {0, 1, 2, -2, 0},
                                   {1, 0, 0, 0, -2}},
                         s_labels(5));
  s.embedding = {
      ambient_unit(3),
      ambient_unit(1) + ambient_unit(16),
      ambient_unit(0) + Int(2) * ambient_unit(16),
      ambient_unit(6) + ambient_unit(17),
      ambient_unit(4),
  };
  // phi swaps s1,s2 and s3,s4 and reflects s5 to s3 + s4 - s5.
  s.involution = IntMatrix::from_columns({
      IntVec{0, 1, 0, 0, 0},
      IntVec{1, 0, 0, 0, 0},
      IntVec{0, 0, 0, 1, 0},
      IntVec{0, 0, 1, 0, 0},
      IntVec{0, 0, 1, 1, -1},
  });
  s.involution_order = 2;
  s.effective_seed = IntVec{1, 0, 0, 0, 0};
  s.ample_candidate = IntVec{1, 1, 3, 3, 0};
  s.irreducible_neg2_images = {IntVec{1, 0}};

  OrderData od;
  od.canonical = IntVec{-2, -4};
  od.ramification.push_back({IntVec{4, 8}, 2});
  s.order_data = std::move(od);

  Expectations& e = s.expect;
  e.signature = Signature{1, 4, 0};
  e.h1_factors = std::vector<Int>{Int(2)};
  e.h1_generators = std::vector<IntVec>{IntVec{0, 0, 1, 0, -1}};
  e.quotient = SurfaceTag::F2;
  e.order_count = Int(1);
  e.nodal_count = 6;
  e.tangency = TangencyExpectation{IntVec{0, 0, 1, 1, 0}, Int(2), 2};
  e.halved_gram = IntMatrix{{-2, 1}, {1, 0}};
  return s;
}

}  // namespace k3orders
