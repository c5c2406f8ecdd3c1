#include "doctest.h"
#include "rsm/constructors.hpp"
#include "rsm/invariants.hpp"
#include "support.hpp"

using namespace rsm;

TEST_CASE("graph ranks") {
  const Rsm m = testing::k3();
  CHECK(m.full_rank() == 2);
  for (SubsetMask e : {1u, 2u, 4u}) CHECK(m.rank(e) == 1);
  CHECK(testing::graph(1, {{0, 0}}).rank(1) == 0);
  const Rsm path = testing::graph(3, {{0, 1}, {1, 2}});
  CHECK(path.full_rank() == 2);
  CHECK(is_free(path));
  CHECK_THROWS_AS(testing::graph(2, {{0, 2}}), InputError);
}

TEST_CASE("vector ranks") {
  CHECK(testing::vectors(1, {{2}}).rank(1) == 1);
  const Rsm m = testing::vectors(2, {{1, 0}, {0, 1}, {1, 1}});
  CHECK(m.full_rank() == 2);
  for (SubsetMask a : {3u, 5u, 6u}) CHECK(m.rank(a) == 2);
  CHECK(testing::vectors(2, {{0, 0}}).rank(1) == 0);
  CHECK_THROWS_AS(testing::vectors(2, {{1}}), InputError);
}

TEST_CASE("multiplicities") {
  const Rsm a = testing::vectors(1, {{2}});
  CHECK(a.mult(0) == 1);
  CHECK(a.mult(1) == 2);

  MultiplicitySpec g;
  g.kind = MultiplicityKind::lie_group;
  g.lie_group = LieGroupSpec{1, 0, {6}};
  const Rsm z4 = rsm_from_abelian(AbelianGroupSpec{1, {4}, {{0, 2}}}, g);
  CHECK(z4.mult(1) == 4);

  g.lie_group = LieGroupSpec{};
  const Rsm triv = rsm_from_abelian(AbelianGroupSpec{1, {4}, {{0, 2}, {3, 1}}}, g);
  for (SubsetMask s = 0; s < 4; ++s) CHECK(triv.mult(s) == 1);

  MultiplicitySpec ar;
  ar.kind = MultiplicityKind::arithmetic;
  const Rsm z4a = rsm_from_abelian(AbelianGroupSpec{1, {4}, {{0, 2}}}, ar);
  CHECK(z4a.mult(1) == 2);
  CHECK(z4a.mult(0) == 4);
  CHECK(z4a.rank(1) == 0);
}

TEST_CASE("potts sum by enumeration") {
  // Gamma = Z, E = {2}, F = Z/2: two homomorphisms, both kill 2.
  const Rsm m = testing::vectors(1, {{2}});
  const Poly v = Poly::variable("v0");
  CHECK(potts_by_enumeration(m, {2}) == Poly::constant(Rational(2)) * (v + Rational(1)));
  const Rsm k = testing::k3();
  // With v = 0 the sum counts Hom(Z^3, F).
  CHECK(evaluate(potts_by_enumeration(k, {3}), {{"v0", Rational(0)}, {"v1", Rational(0)}, {"v2", Rational(0)}}) == 27);
  CHECK(quotient_hom_count(m, 1, {2}) == 2);
  CHECK(quotient_hom_count(m, 1, {3}) == 1);
}

TEST_CASE("potts enumeration matches the finite-group multiplicity sum") {
  testing::Gen gen(31);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(gen.integer(1, 2));
    const std::vector<long> f{gen.integer(2, 4)};
    const Rsm m = testing::lie(dim, gen.vector_list(dim, static_cast<std::size_t>(gen.integer(1, 3)), 3), LieGroupSpec{0, 0, f});
    CHECK(potts(m) == potts_by_enumeration(m, f));
  }
}
