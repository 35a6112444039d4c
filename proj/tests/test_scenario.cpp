#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3orders/errors.hpp"
#include "k3orders/scenario.hpp"
#include "k3orders/signature.hpp"

using namespace k3orders;

namespace {

Json minimal_scenario_json() {
  Json j;
  j["ambient"] = Json::object({{"gram", Json::array({Json::array({2})})}});
  j["sublattice"] = Json::object({{"gram", Json::array({Json::array({2})})}});
  j["embedding"] = Json::array({Json::array({1})});
  j["involution"] = Json::object(
      {{"matrix", Json::array({Json::array({1})})}, {"order", 1}});
  return j;
}

}  // namespace

TEST_CASE("minimal custom-ambient scenario parses") {
  const Scenario s = scenario_from_json(minimal_scenario_json());
  CHECK(!s.ambient_is_k3);
  CHECK(s.sublattice.rank() == 1);
  CHECK(s.embedding.size() == 1);
  CHECK(s.involution_order == 1);
  CHECK(!s.effective_seed.has_value());
  CHECK(!s.order_data.has_value());
}

TEST_CASE("missing fields name their path") {
  Json j = minimal_scenario_json();
  j.erase("embedding");
  try {
    scenario_from_json(j);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.path == "embedding");
  }

  Json k = minimal_scenario_json();
  k["involution"].erase("order");
  try {
    scenario_from_json(k);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.path == "involution.order");
  }
}

TEST_CASE("non-symmetric gram is rejected at its path") {
  Json j = minimal_scenario_json();
  j["sublattice"]["gram"] = Json::array(
      {Json::array({0, 1}), Json::array({2, 0})});
  j["embedding"] = Json::array({Json::array({1}), Json::array({1})});
  j["involution"]["matrix"] =
      Json::array({Json::array({1, 0}), Json::array({0, 1})});
  try {
    scenario_from_json(j);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.path == "sublattice.gram");
    CHECK(std::string(e.what()).find("symmetric") != std::string::npos);
  }
}

TEST_CASE("shape mismatches are schema errors") {
  SUBCASE("embedding row count") {
    Json j = minimal_scenario_json();
    j["embedding"] = Json::array({Json::array({1}), Json::array({1})});
    CHECK_THROWS_AS(scenario_from_json(j), SchemaError);
  }
  SUBCASE("image length vs ambient rank") {
    Json j = minimal_scenario_json();
    j["embedding"] = Json::array({Json::array({1, 0})});
    CHECK_THROWS_AS(scenario_from_json(j), SchemaError);
  }
  SUBCASE("involution matrix size") {
    Json j = minimal_scenario_json();
    j["involution"]["matrix"] =
        Json::array({Json::array({1, 0}), Json::array({0, 1})});
    CHECK_THROWS_AS(scenario_from_json(j), SchemaError);
  }
  SUBCASE("seed length") {
    Json j = minimal_scenario_json();
    j["effective_seed"] = Json::array({1, 0});
    CHECK_THROWS_AS(scenario_from_json(j), SchemaError);
  }
  SUBCASE("fixed_component_rows out of range") {
    Json j = minimal_scenario_json();
    j["fixed_component_rows"] = Json::array({2});
    CHECK_THROWS_AS(scenario_from_json(j), SchemaError);
  }
  SUBCASE("unknown quotient tag") {
    Json j = minimal_scenario_json();
    j["expect"] = Json::object({{"quotient", "P3"}});
    CHECK_THROWS_AS(scenario_from_json(j), SchemaError);
  }
  SUBCASE("ambient string other than K3") {
    Json j = minimal_scenario_json();
    j["ambient"] = "K5";
    CHECK_THROWS_AS(scenario_from_json(j), SchemaError);
  }
}

TEST_CASE("builtin scenarios round-trip through JSON") {
  for (const Scenario& s : {builtin_p2_sextic(3), builtin_p2_sextic(7),
                            builtin_p2_sextic(18), builtin_quadric(),
                            builtin_hirzebruch2()}) {
    const Json j = scenario_to_json(s);
    const Scenario back = scenario_from_json(j);
    CHECK(scenario_to_json(back) == j);
    CHECK(back.name == s.name);
    CHECK(back.sublattice == s.sublattice);
    CHECK(back.embedding == s.embedding);
    CHECK(back.involution == s.involution);
    CHECK(back.involution_order == s.involution_order);
    CHECK(back.effective_seed == s.effective_seed);
    CHECK(back.ample_candidate == s.ample_candidate);
  }
}

TEST_CASE("double-plane family data is internally consistent") {
  // Each rank is the leading block of the rank-18 lattice, and the declared
  // ambient images must reproduce exactly that Gram matrix.
  const Scenario big = builtin_p2_sextic(18);
  const Lattice ambient = big.ambient();
  for (std::size_t n = 3; n <= 18; ++n) {
    const Scenario s = builtin_p2_sextic(n);
    REQUIRE(s.sublattice.rank() == n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(s.embedding[i] == big.embedding[i]);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(s.sublattice.gram()(i, j) == big.sublattice.gram()(i, j));
        CHECK(ambient.pair(s.embedding[i], s.embedding[j]) ==
              s.sublattice.gram()(i, j));
      }
    }
    CHECK(signature(s.sublattice.gram()) == Signature{1, n - 1, 0});
  }
}

TEST_CASE("builtin rank bounds") {
  CHECK_THROWS_AS(builtin_p2_sextic(2), OutOfRangeNError);
  CHECK_THROWS_AS(builtin_p2_sextic(19), OutOfRangeNError);
  CHECK_NOTHROW(builtin_p2_sextic(3));
  CHECK_NOTHROW(builtin_p2_sextic(18));
}

TEST_CASE("involution data of the builtins is an involution in coordinates") {
  for (const Scenario& s :
       {builtin_p2_sextic(6), builtin_quadric(), builtin_hirzebruch2()}) {
    CHECK(s.involution * s.involution ==
          IntMatrix::identity(s.sublattice.rank()));
  }
}

TEST_CASE("big integers survive a JSON round-trip") {
  const Int big("123456789012345678901234567890");
  const Json j = int_to_json(big);
  CHECK(j.is_string());
  CHECK(int_from_json(j, "x") == big);
  const Json small = int_to_json(Int(-42));
  CHECK(small.is_number_integer());
  CHECK(int_from_json(small, "x") == Int(-42));
  CHECK_THROWS_AS(int_from_json(Json("12x"), "x"), SchemaError);
  CHECK_THROWS_AS(int_from_json(Json(1.5), "x"), SchemaError);
}
