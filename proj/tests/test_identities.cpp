#include <set>

#include "doctest.h"
#include "rsm/identities.hpp"
#include "rsm/instance.hpp"
#include "rsm/invariants.hpp"
#include "support.hpp"

using namespace rsm;
using testing::k3;

namespace {

const Rational half = make_rational(1, 2);

Params scalar_params(std::initializer_list<std::pair<const std::string, Rational>> s) {
  Params x;
  x.scalar = s;
  return x;
}

}  // namespace

TEST_CASE("registry ids are unique and sorted") {
  const auto& reg = identity_registry();
  CHECK(reg.size() == 37);
  std::set<std::string> ids;
  for (const auto& rec : reg) ids.insert(rec.id);
  CHECK(ids.size() == reg.size());
  for (std::size_t i = 1; i < reg.size(); ++i) CHECK(reg[i - 1].id < reg[i].id);
  CHECK_THROWS_AS(find_identity("NOPE"), InputError);
}

TEST_CASE("closed-form examples") {
  const Rsm m = k3();
  const auto& chi = find_identity("E-CHI-RES");
  CHECK(closed_form(chi, m, ProbabilityAssignment(3, half), scalar_params({{"t", Rational(3)}})) == make_rational(123, 8));

  const Rsm seg = testing::vectors(1, {{2}});
  CHECK(closed_form(find_identity("E-EHR"), seg, {half}, scalar_params({{"t", Rational(2)}})) == 3);

  // E-Z at p = 1 is Z itself.
  testing::Gen gen(13);
  for (int trial = 0; trial < 5; ++trial) {
    const Rsm r = gen.explicit_rsm(3);
    Params x = scalar_params({{"t", gen.rational()}});
    x.vector["u"] = {gen.rational(), gen.rational(), gen.rational()};
    CHECK(closed_form(find_identity("E-Z"), r, ProbabilityAssignment(3, Rational(1)), x) ==
          z_value(r, x.s("t"), x.v("u")));
  }
}

TEST_CASE("piecewise identities refuse points outside their branch") {
  const auto& flow = find_identity("E-FLOW");
  const Params t = scalar_params({{"t", Rational(5)}});
  CHECK_THROWS_AS(closed_form(find_identity("E-XMONO"), k3(), ProbabilityAssignment(3, Rational(1)), t), PoleError);
  CHECK_THROWS_AS(closed_form(find_identity("E-HOM"), k3(), ProbabilityAssignment(3, half), Params{}), PreconditionError);
  // p = 1/2 everywhere: 2^{-|E|} t^{|E| - r(E)} m(E).
  const ProbabilityAssignment p(3, half);
  CHECK(closed_form(flow, k3(), p, t) == make_rational(5, 8));
  CHECK(evaluate_lhs(flow, k3(), p, t)[0] == make_rational(5, 8));
  CHECK(check_point(flow, k3(), p, t).pass);
}

TEST_CASE("convolution of two multiplicities on U_{1,2}") {
  const auto& conv = find_identity("CONV-Z");
  const Rsm u = testing::uniform_matroid(1, 2);
  testing::Gen gen(29);
  for (int trial = 0; trial < 10; ++trial) {
    const Rsm m = rsm_from_explicit(u.rank_table(), {gen.rational(), gen.rational(), gen.rational(), gen.rational()});
    const Params x = sample_params(conv, m, gen.rng);
    CHECK(check_point(conv, m, {}, x).pass);
  }
}

TEST_CASE("a corrupted closed form is caught") {
  IdentityRecord bad = find_identity("E-Z");
  const auto good_rhs = bad.rhs;
  bad.rhs = [good_rhs](const Rsm& m, const ProbabilityAssignment& p, const Params& x) {
    auto out = good_rhs(m, p, x);
    for (auto& t : out) t.value = -t.value;
    return out;
  };
  const auto lines = verify_identity(bad, "k3", k3(), 3, 7);
  REQUIRE_FALSE(lines.empty());
  for (const auto& l : lines) CHECK_FALSE(l.pass);
  for (const auto& l : verify_identity(find_identity("E-Z"), "k3", k3(), 3, 7)) CHECK(l.pass);
}

TEST_CASE("verification is deterministic and ordered") {
  std::vector<NamedRsm> corpus{{"k3", k3()}, {"seg2", testing::vectors(1, {{2}})}};
  std::vector<const IdentityRecord*> ids;
  for (const auto& rec : identity_registry()) ids.push_back(&rec);
  const auto a = verify_all(ids, corpus, 2, 99);
  const auto b = verify_all(ids, corpus, 2, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(format_line(a[i]) == format_line(b[i]));
    CHECK(a[i].pass);
  }
  for (std::size_t i = 1; i < a.size(); ++i)
    CHECK(std::tie(a[i - 1].id, a[i - 1].instance, a[i - 1].index) < std::tie(a[i].id, a[i].instance, a[i].index));
  CHECK(derive_seed("E-Z", "k3", 1) != derive_seed("E-Z", "k3", 2));
  CHECK(derive_seed("E-Z", "k3", 1) == derive_seed("E-Z", "k3", 1));
}

TEST_CASE("every identity holds on random explicit rsms") {
  testing::Gen gen(71);
  for (int trial = 0; trial < 6; ++trial) {
    const Rsm m = gen.explicit_rsm(static_cast<std::size_t>(gen.integer(1, 3)));
    const std::string name = "random" + std::to_string(trial);
    for (const auto& rec : identity_registry())
      for (const auto& line : verify_identity(rec, name, m, 2, 5)) CHECK_MESSAGE(line.pass, format_line(line) << " " << line.detail);
  }
}

TEST_CASE("probability schedule") {
  std::mt19937_64 rng(1);
  const auto sched = probability_schedule(find_identity("E-FLOW"), k3(), rng);
  REQUIRE(sched.size() >= 4);
  CHECK(sched[0].p == ProbabilityAssignment(3, make_rational(1, 3)));
  CHECK(sched[1].p == ProbabilityAssignment(3, half));
  CHECK(sched[2].p == ProbabilityAssignment(3, Rational(1)));
}
