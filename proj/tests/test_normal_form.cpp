#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3orders/normal_form.hpp"
#include "test_util.hpp"

using namespace k3orders;
namespace tu = k3orders::testutil;

static bool is_snf_shape(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  const std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < n) {
      if (d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
      if (d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
    }
  }
  return true;
}

TEST_CASE("smith normal form: pinned small cases") {
  SUBCASE("already diagonal with divisibility") {
    const auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 4}});
    CHECK(s.diagonal() == IntVec{2, 4});
  }
  SUBCASE("diagonal without divisibility gets rearranged") {
    const auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
    CHECK(s.diagonal() == IntVec{1, 6});
  }
  SUBCASE("rank-deficient") {
    const auto s = smith_normal_form(IntMatrix{{2, 4}, {1, 2}});
    CHECK(s.diagonal() == IntVec{1, 0});
    CHECK(s.rank() == 1);
  }
  SUBCASE("hyperbolic-plus-triple-point gram") {
    const IntMatrix g{{-2, 3, 0}, {3, -2, 1}, {0, 1, -2}};
    const auto s = smith_normal_form(g);
    CHECK(s.diagonal() == IntVec{1, 1, 12});
    CHECK(determinant(g) == 12);
  }
}

TEST_CASE("smith normal form: reconstruction on random matrices") {
  for (int cs = 0; cs < 200; ++cs) {
    std::mt19937 gen(1000u + cs);
    const std::size_t r = std::size_t(tu::rand_int(gen, 1, 6));
    const std::size_t c = std::size_t(tu::rand_int(gen, 1, 6));
    const IntMatrix m = tu::random_matrix(gen, r, c, 5);
    const auto s = smith_normal_form(m);
    REQUIRE(s.u * m * s.v == s.d);
    REQUIRE(is_snf_shape(s.d));
    REQUIRE(is_unimodular(s.u));
    REQUIRE(is_unimodular(s.v));
  }
}

TEST_CASE("smith normal form is a conjugation invariant") {
  for (int cs = 0; cs < 60; ++cs) {
    std::mt19937 gen(7000u + cs);
    const std::size_t n = std::size_t(tu::rand_int(gen, 1, 5));
    const IntMatrix m = tu::random_matrix(gen, n, n, 4);
    const IntMatrix a = tu::random_unimodular(gen, n);
    const IntMatrix b = tu::random_unimodular(gen, n);
    CHECK(smith_normal_form(a * m * b).diagonal() ==
          smith_normal_form(m).diagonal());
  }
}

TEST_CASE("hermite normal form: pinned cases") {
  SUBCASE("permutation flips into the identity") {
    const auto h = hermite_normal_form(IntMatrix{{0, 1}, {1, 0}});
    CHECK(h.h == IntMatrix::identity(2));
  }
  SUBCASE("pivots positive, entries above reduced") {
    const IntMatrix m{{2, 4}, {1, 3}};
    const auto h = hermite_normal_form(m);
    CHECK(h.h == IntMatrix{{1, 1}, {0, 2}});
    CHECK(h.u * m == h.h);
    CHECK(is_unimodular(h.u));
  }
  SUBCASE("wide rank-deficient") {
    const auto h = hermite_normal_form(IntMatrix{{2, 4, 6}, {3, 6, 9}});
    CHECK(h.h == IntMatrix{{1, 2, 3}, {0, 0, 0}});
  }
}

TEST_CASE("hermite normal form: reconstruction and canonicity") {
  for (int cs = 0; cs < 200; ++cs) {
    std::mt19937 gen(2000u + cs);
    const std::size_t r = std::size_t(tu::rand_int(gen, 1, 6));
    const std::size_t c = std::size_t(tu::rand_int(gen, 1, 6));
    const IntMatrix m = tu::random_matrix(gen, r, c, 5);
    const auto h = hermite_normal_form(m);
    REQUIRE(h.u * m == h.h);
    REQUIRE(is_unimodular(h.u));
    // canonical: applying the reduction again changes nothing
    REQUIRE(hermite_normal_form(h.h).h == h.h);
    // a basis change of the rows must not change the normal form
    const IntMatrix t = tu::random_unimodular(gen, r);
    REQUIRE(hermite_normal_form(t * m).h == h.h);
  }
}

TEST_CASE("integer kernel: pinned cases") {
  SUBCASE("norm matrix of a 3-cycle") {
    const IntMatrix n{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    const auto ker = integer_kernel(n);
    REQUIRE(ker.size() == 2);
    const IntMatrix got = IntMatrix::from_rows(ker);
    const IntMatrix want{{1, -1, 0}, {1, 0, -1}};
    CHECK(same_row_span(got, want));
  }
  SUBCASE("injective map has no kernel") {
    CHECK(integer_kernel(IntMatrix{{2, 0}, {0, 3}, {1, 1}}).empty());
  }
  SUBCASE("zero matrix has full kernel") {
    CHECK(integer_kernel(IntMatrix(2, 3)).size() == 3);
  }
}

TEST_CASE("integer kernel is saturated") {
  for (int cs = 0; cs < 120; ++cs) {
    std::mt19937 gen(3000u + cs);
    const std::size_t r = std::size_t(tu::rand_int(gen, 1, 5));
    const std::size_t c = std::size_t(tu::rand_int(gen, 1, 5));
    const IntMatrix m = tu::random_matrix(gen, r, c, 4);
    const auto ker = integer_kernel(m);
    for (const IntVec& k : ker) REQUIRE(is_zero(m * k));
    if (ker.empty()) continue;
    // saturated basis <=> the basis matrix has all-ones Smith diagonal
    const IntMatrix km = columns_matrix(c, ker);
    for (const Int& d : smith_normal_form(km).diagonal()) REQUIRE(d == 1);
    // and the rank accounts for the full rational kernel
    REQUIRE(smith_normal_form(m).rank() + ker.size() == c);
  }
}

TEST_CASE("solve_integral: pinned cases") {
  SUBCASE("solvable diagonal system") {
    const auto x = solve_integral(IntMatrix{{2, 0}, {0, 2}}, IntVec{2, 4});
    REQUIRE(x.has_value());
    CHECK(*x == IntVec{1, 2});
  }
  SUBCASE("parity obstruction") {
    CHECK(!solve_integral(IntMatrix{{2, 0}, {0, 2}}, IntVec{1, 2}).has_value());
  }
  SUBCASE("underdetermined system") {
    const IntMatrix m{{1, 2, 3}};
    const auto x = solve_integral(m, IntVec{7});
    REQUIRE(x.has_value());
    CHECK(m * *x == IntVec{7});
  }
  SUBCASE("inconsistent system") {
    CHECK(!solve_integral(IntMatrix{{1, 1}, {1, 1}}, IntVec{0, 1}).has_value());
  }
}

TEST_CASE("solve_integral finds a witness whenever one was planted") {
  for (int cs = 0; cs < 120; ++cs) {
    std::mt19937 gen(4000u + cs);
    const std::size_t r = std::size_t(tu::rand_int(gen, 1, 5));
    const std::size_t c = std::size_t(tu::rand_int(gen, 1, 5));
    const IntMatrix m = tu::random_matrix(gen, r, c, 4);
    const IntVec planted = tu::random_vector(gen, c, 6);
    const IntVec b = m * planted;
    const auto x = solve_integral(m, b);
    REQUIRE(x.has_value());
    REQUIRE(m * *x == b);
  }
}

TEST_CASE("determinant by fraction-free elimination") {
  CHECK(determinant(IntMatrix{{2, 4}, {1, 3}}) == 2);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK(determinant(IntMatrix::identity(5)) == 1);
  for (int cs = 0; cs < 100; ++cs) {
    std::mt19937 gen(5000u + cs);
    const std::size_t n = std::size_t(tu::rand_int(gen, 1, 5));
    const IntMatrix m = tu::random_matrix(gen, n, n, 4);
    Int prod = 1;
    for (const Int& d : smith_normal_form(m).diagonal()) prod *= d;
    CHECK(abs(determinant(m)) == prod);
  }
}

TEST_CASE("inverse of a unimodular matrix") {
  for (int cs = 0; cs < 50; ++cs) {
    std::mt19937 gen(6000u + cs);
    const std::size_t n = std::size_t(tu::rand_int(gen, 1, 6));
    const IntMatrix u = tu::random_unimodular(gen, n);
    CHECK(u * inverse_unimodular(u) == IntMatrix::identity(n));
  }
  CHECK_THROWS_AS(inverse_unimodular(IntMatrix{{2, 0}, {0, 1}}), Error);
}
