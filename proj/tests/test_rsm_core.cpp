#include <algorithm>

#include "doctest.h"
#include "rsm/invariants.hpp"
#include "support.hpp"

using namespace rsm;
using testing::k3;
using testing::uniform_matroid;

TEST_CASE("restriction") {
  const Rsm u13 = uniform_matroid(1, 3);
  CHECK(tables_equal(u13.restriction(u13.ground()), u13));
  const Rsm empty = u13.restriction(0);
  CHECK(empty.size() == 0);
  CHECK(multivariate_tutte(empty) == Poly::constant(Rational(1)));
  CHECK(tables_equal(u13.restriction(0b101), uniform_matroid(1, 2)));
  CHECK(u13.restriction(0b101).labels() == std::vector<std::size_t>{0, 2});
}

TEST_CASE("contraction") {
  const Rsm m = k3();
  const Rsm c = m.contraction(0b001);
  REQUIRE(c.size() == 2);
  CHECK(c.rank(0b01) == 1);
  CHECK(c.rank(0b10) == 1);
  CHECK(c.rank(0b11) == 1);
  CHECK(c.labels() == std::vector<std::size_t>{1, 2});
  CHECK(tables_equal(m.contraction(0), m));

  // E = {2, 3} in Z, contract {2}: (Z/<2,3>) has trivial torsion.
  const Rsm a = testing::vectors(1, {{2}, {3}});
  const Rsm ca = a.contraction(0b01);
  CHECK(ca.mult(0b1) == 1);
  CHECK(ca.mult(0) == 2);
}

TEST_CASE("dual") {
  testing::Gen gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Rsm m = gen.explicit_rsm(static_cast<std::size_t>(gen.integer(0, 4)));
    CHECK(tables_equal(m.dual().dual(), m.contraction(0)));
  }
  const Rsm coloop = uniform_matroid(1, 1);
  CHECK(coloop.dual().rank(1) == 0);
  const Rsm d = uniform_matroid(1, 3).dual();
  for (SubsetMask a = 0; a < 8; ++a) CHECK(d.rank(a) == std::min(popcount(a), 2));
}

TEST_CASE("closure and flats") {
  CHECK(closure(k3(), 0) == 0);
  CHECK(closure(k3(), 0b011) == 0b111);
  CHECK(flats(uniform_matroid(1, 3)) == std::vector<SubsetMask>{0, 0b111});
  auto f = flats(k3());
  std::sort(f.begin(), f.end());
  CHECK(f == std::vector<SubsetMask>{0, 1, 2, 4, 7});
}

TEST_CASE("matroid and arithmetic checkers") {
  CHECK(check_matroid(uniform_matroid(1, 3)));
  CHECK(check_matroid(k3()));
  std::vector<long> neg{0, -1, -1, -2};
  CHECK_FALSE(check_matroid(rsm_from_explicit(neg, std::vector<Rational>(4, Rational(1)))));

  CHECK(check_arithmetic(uniform_matroid(2, 4)));
  CHECK(check_arithmetic(testing::vectors(1, {{2}})));
  const Rsm loop = rsm_from_explicit({0, 0}, {Rational(1), Rational(3)});
  CHECK_FALSE(check_arithmetic(loop));
}

TEST_CASE("checkers accept random representable instances") {
  testing::Gen gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(gen.integer(1, 3));
    const Rsm m = testing::vectors(dim, gen.vector_list(dim, static_cast<std::size_t>(gen.integer(1, 5)), 3));
    CHECK(check_matroid(m));
    CHECK(check_arithmetic(m));
  }
}

TEST_CASE("subset sums") {
  const Rsm m = uniform_matroid(2, 4);
  CHECK(subset_sum(m, [](SubsetMask) { return Poly::constant(Rational(1)); }) == Poly::constant(Rational(16)));
  const Poly v = Poly::variable("v");
  CHECK(subset_sum(m, [&](SubsetMask a) { return v.pow(static_cast<unsigned>(popcount(a))); }) == (v + Rational(1)).pow(4));
  const Rsm coloop = uniform_matroid(1, 1);
  const Poly z = subset_sum(coloop, [&](SubsetMask a) {
    Poly w = Poly::constant(coloop.mult(a)) * Poly::variable("q", -static_cast<int>(coloop.rank(a)));
    if (a) w *= Poly::variable(var_of(coloop, "v", 0));
    return w;
  });
  CHECK(z == Poly::constant(Rational(1)) + Poly::variable("q", -1) * Poly::variable("v0"));
}

TEST_CASE("materialized copies keep tables and metadata") {
  const Rsm m = testing::vectors(2, {{1, 0}, {1, 2}, {0, 3}});
  const Rsm t = m.materialized();
  CHECK(tables_equal(m, t));
  CHECK(t.meta().ambient_rank == m.meta().ambient_rank);
}
