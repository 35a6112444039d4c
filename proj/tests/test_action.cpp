#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3orders/action.hpp"
#include "test_util.hpp"

using namespace k3orders;
namespace tu = k3orders::testutil;

namespace {
const IntMatrix kSwap{{0, 1}, {1, 0}};
}

TEST_CASE("isometry check") {
  const Lattice u(hyperbolic_gram(), {"u", "v"});
  CHECK(is_isometry(u, kSwap));
  CHECK(is_isometry(u, -IntMatrix::identity(2)));
  CHECK(!is_isometry(u, IntMatrix{{1, 1}, {0, 1}}));  // shears the form
  CHECK(!is_isometry(u, IntMatrix{{1, 0}}));          // wrong shape
}

TEST_CASE("cyclic action construction") {
  const Lattice u(hyperbolic_gram(), {"u", "v"});

  CHECK_NOTHROW(CyclicAction(u, kSwap, 2));
  CHECK_NOTHROW(CyclicAction(u, IntMatrix::identity(2), 1));

  SUBCASE("non-isometries are rejected") {
    CHECK_THROWS_AS(CyclicAction(u, IntMatrix{{1, 1}, {0, 1}}, 2),
                    NotAnIsometryError);
  }
  SUBCASE("declared order must be the exact order") {
    CHECK_THROWS_AS(CyclicAction(u, kSwap, 3), WrongOrderError);
    CHECK_THROWS_AS(CyclicAction(u, kSwap, 4), WrongOrderError);
    CHECK_THROWS_AS(CyclicAction(u, IntMatrix::identity(2), 2),
                    WrongOrderError);
    CHECK_THROWS_AS(CyclicAction(u, kSwap, 0), WrongOrderError);
  }
  SUBCASE("a non-faithful action needs the explicit constructor") {
    const CyclicAction a =
        CyclicAction::with_declared_order(u, IntMatrix::identity(2), 2);
    CHECK(a.order() == 2);
    // but the declared order must still be a period of the matrix
    CHECK_THROWS_AS(CyclicAction::with_declared_order(u, kSwap, 3),
                    WrongOrderError);
  }
}

TEST_CASE("order-3 rotation of the triangular permutation lattice") {
  IntMatrix perm(3, 3);
  perm(1, 0) = perm(2, 1) = perm(0, 2) = 1;  // e1 -> e2 -> e3 -> e1
  const Lattice l(IntMatrix::identity(3));
  CHECK_NOTHROW(CyclicAction(l, perm, 3));
  CHECK_THROWS_AS(CyclicAction(l, perm, 2), WrongOrderError);
}

TEST_CASE("partial norms") {
  const Lattice u(hyperbolic_gram(), {"u", "v"});
  const CyclicAction a(u, kSwap, 2);
  CHECK(partial_norm(a, IntVec{1, 0}, 1) == IntVec{1, 0});
  CHECK(partial_norm(a, IntVec{1, 0}, 2) == IntVec{1, 1});
  CHECK(partial_norm(a, IntVec{3, -2}, 2) == IntVec{1, 1});
  // full norm of a cocycle vanishes
  CHECK(partial_norm(a, IntVec{1, -1}, 2) == IntVec{0, 0});
}

TEST_CASE("fixed sublattice and halving") {
  const Lattice u(hyperbolic_gram(), {"u", "v"});
  const CyclicAction a(u, kSwap, 2);
  const Sublattice fixed = fixed_sublattice(a);
  REQUIRE(fixed.rank() == 1);
  CHECK(fixed.lattice.gram() == IntMatrix{{2}});
  CHECK(halved_form(fixed.lattice).gram() == IntMatrix{{1}});

  SUBCASE("negation fixes nothing") {
    const CyclicAction neg(u, -IntMatrix::identity(2), 2);
    CHECK(fixed_sublattice(neg).rank() == 0);
  }
  SUBCASE("odd entries block halving") {
    CHECK_THROWS_AS(halved_form(Lattice(IntMatrix{{3}})), OddEntryError);
    CHECK_THROWS_AS(halved_form(Lattice(IntMatrix{{2, 1}, {1, 2}})),
                    OddEntryError);
    CHECK(halved_form(Lattice(IntMatrix{{-4, 2}, {2, 0}})).gram() ==
          IntMatrix{{-2, 1}, {1, 0}});
  }
}

TEST_CASE("fixed sublattice is saturated, fixed, of the expected rank") {
  // conjugates of signed diagonal involutions: m = t d t^-1 preserves the
  // form (t^-1)^T g_diag t^-1 whenever g_diag and d are both diagonal
  for (int cs = 0; cs < 60; ++cs) {
    std::mt19937 gen(14000u + cs);
    const std::size_t n = std::size_t(tu::rand_int(gen, 2, 5));
    IntMatrix gdiag(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      gdiag(i, i) = tu::rand_int(gen, 1, 4);
      if (tu::rand_int(gen, 0, 1)) gdiag(i, i) = -gdiag(i, i);
    }
    IntMatrix d = IntMatrix::identity(n);
    std::size_t plus = n;
    for (std::size_t i = 0; i < n; ++i)
      if (tu::rand_int(gen, 0, 1)) {
        d(i, i) = -1;
        --plus;
      }
    if (plus == n) {
      d(0, 0) = -1;
      --plus;
    }
    const IntMatrix t = tu::random_unimodular(gen, n);
    const IntMatrix tinv = inverse_unimodular(t);
    const Lattice l(tinv.transposed() * gdiag * tinv);
    const CyclicAction a(l, t * d * tinv, 2);

    const Sublattice fixed = fixed_sublattice(a);
    REQUIRE(fixed.rank() == plus);
    for (const IntVec& f : fixed.basis()) REQUIRE(a.apply(f) == f);
    if (plus > 0)
      for (const Int& s : smith_normal_form(fixed.inclusion).diagonal())
        REQUIRE(s == 1);
  }
}

TEST_CASE("extension by negation: hyperbolic plane") {
  const Lattice u(hyperbolic_gram(), {"u", "v"});
  const Lattice src(IntMatrix{{2}}, {"s"});
  const Embedding e = Embedding::from_images(src, u, {IntVec{1, 1}});
  const CyclicAction id(src, IntMatrix::identity(1), 1);
  const ExtensionResult r = extends_to_ambient({e, id});
  REQUIRE(r.extends);
  CHECK(r.matrix == kSwap);  // +1 on u+v, -1 on u-v is exactly the swap
}

TEST_CASE("extension by negation: 1/3 obstruction") {
  const Lattice amb(IntMatrix{{1, 0}, {0, 2}});
  const Lattice src(IntMatrix{{3}}, {"s"});
  const Embedding e = Embedding::from_images(src, amb, {IntVec{1, 1}});
  const CyclicAction id(src, IntMatrix::identity(1), 1);
  const ExtensionResult r = extends_to_ambient({e, id});
  REQUIRE(!r.extends);
  REQUIRE(r.failed_entry.has_value());
  CHECK(r.failed_entry->value == make_rat(-1, 3));
}

TEST_CASE("raw extension API tolerates non-isometric input") {
  // deliberately broken images (they do not reproduce any source form we
  // declare) still get a definite integral/non-integral answer
  const Lattice amb(IntMatrix{{2, 0}, {0, 2}});
  IntMatrix images(2, 1);
  images(0, 0) = 1;
  images(1, 0) = 1;
  const ExtensionResult r =
      extend_by_negation(amb, images, IntMatrix::identity(1));
  CHECK(r.extends);  // swap works here
  CHECK(r.matrix == kSwap);
}
