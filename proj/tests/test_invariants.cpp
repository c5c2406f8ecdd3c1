#include "doctest.h"
#include "rsm/invariants.hpp"
#include "support.hpp"

using namespace rsm;
using testing::k3;

namespace {

Poly var(const std::string& name, int e = 1) { return Poly::variable(name, e); }
Poly c(long n) { return Poly::constant(Rational(n)); }

}  // namespace

TEST_CASE("multivariate tutte examples") {
  const Rsm coloop = testing::uniform_matroid(1, 1);
  CHECK(multivariate_tutte(coloop) == c(1) + var("q", -1) * var("v0"));
  CHECK(multivariate_tutte(testing::vectors(1, {{2}})) == c(1) + c(2) * var("q", -1) * var("v0"));
  const Poly v = var("v");
  const Poly zk3 = uniformize(multivariate_tutte(k3()), k3(), "v", "v");
  CHECK(zk3 == c(1) + c(3) * var("q", -1) * v + c(3) * var("q", -2) * v.pow(2) + var("q", -2) * v.pow(3));
}

TEST_CASE("classical specializations of K3") {
  const Poly x = var("x"), y = var("y"), t = var("t");
  CHECK(tutte(k3()) == x.pow(2) + x + y);
  CHECK(chromatic_value(k3(), Rational(3)) == 6);
  CHECK(chromatic(k3()) == t * (t - Rational(1)) * (t - Rational(2)));
  CHECK(characteristic(k3()) == (t - Rational(1)) * (t - Rational(2)));
  CHECK(flow(k3()) == t - Rational(1));
  CHECK(flow(testing::uniform_matroid(1, 1)).is_zero());
  CHECK(rank_monomial(k3()) == var("t", -2));
  CHECK(set_monomial(testing::vectors(1, {{2}})) == c(2) * var("t0"));
  CHECK(rank_monomial(rsm_from_explicit({0}, {Rational(1)})) == c(1));
}

TEST_CASE("ehrhart multivariate examples") {
  const Rational k(4);
  CHECK(ehrhart_value(testing::vectors(1, {{2}}), k) == 1 + 2 * k);
  CHECK(ehrhart_multivariate(testing::graph(1, {{0, 0}})) == c(1));
  CHECK(ehrhart_value(k3(), k) == 1 + 3 * k + 3 * k * k);
}

TEST_CASE("potts examples") {
  const Rsm m = testing::lie(1, {{2}}, LieGroupSpec{0, 0, {2}});
  CHECK(potts(m) == c(2) + c(2) * var("v0"));
  const Rsm triv = testing::lie(1, {{2}}, LieGroupSpec{});
  CHECK(potts(triv) == substitute(multivariate_tutte(triv), std::map<std::string, Rational>{{"q", Rational(1)}}));
  const Rsm three = testing::lie(2, {{1, 0}, {1, 3}}, LieGroupSpec{0, 0, {3}});
  CHECK(evaluate(potts(three), {{"v0", Rational(0)}, {"v1", Rational(0)}}) == 9);
  CHECK_THROWS_AS(potts(k3()), MissingMetadataError);
}

TEST_CASE("chromatic needs the ambient rank") {
  const Rsm u = testing::uniform_matroid(1, 2);
  CHECK_THROWS_AS(chromatic(u), MissingMetadataError);
  const Rsm with = testing::uniform_matroid(1, 2, 3);
  CHECK(chromatic(with) == var("t", 2) * characteristic(with));
}

TEST_CASE("tutte from Z, deletion-contraction and duality on random rsms") {
  testing::Gen gen(41);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 4));
    const Rsm m = gen.explicit_rsm(n);
    const Rational x = gen.rational(), y = gen.rational();
    if (x == 1 || y == 1) continue;
    const long r = m.full_rank();

    // T = (x-1)^{r(E)} Z((x-1)(y-1), y-1).
    CHECK(tutte_value(m, x, y) == pow_int(x - 1, r) * z_value(m, (x - 1) * (y - 1), y - 1));
    CHECK(rank_nullity_value(m, x, y) ==
          evaluate(rank_nullity(m), {{"x", x}, {"y", y}}));

    // Z_M = Z_{M \ e} + v_e q^{-r(e)} Z_{M / e}, the last element e.
    const SubsetMask e = SubsetMask{1} << (n - 1);
    const Rational q = gen.rational();
    std::vector<Rational> v(n);
    for (auto& vi : v) vi = gen.rational();
    const std::vector<Rational> rest(v.begin(), v.end() - 1);
    const Rsm del = m.restriction(m.ground() & ~e);
    const Rsm con = m.contraction(e);
    CHECK(z_value(m, q, v) == z_value(del, q, rest) + v.back() * pow_int(q, -m.rank(e)) * z_value(con, q, rest));

    // Flow of M is the characteristic polynomial of its dual, up to t^{r(empty)}.
    const Rational t = gen.rational();
    CHECK(pow_int(t, m.rank(0)) * flow_value(m, t) == characteristic_value(m.dual(), t));
    CHECK(chromatic_value(m, t) == pow_int(t, ambient_rank(m) - r) * characteristic_value(m, t));
  }
}

TEST_CASE("numeric kernels agree with polynomial evaluation") {
  testing::Gen gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Rsm m = gen.explicit_rsm(static_cast<std::size_t>(gen.integer(1, 3)));
    const Rational t = gen.rational();
    CHECK(flow_value(m, t) == evaluate(flow(m), {{"t", t}}));
    CHECK(characteristic_value(m, t) == evaluate(characteristic(m), {{"t", t}}));
    CHECK(chromatic_value(m, t) == evaluate(chromatic(m), {{"t", t}}));
  }
}
