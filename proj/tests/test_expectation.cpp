#include <cmath>

#include "doctest.h"
#include "rsm/expectation.hpp"
#include "rsm/invariants.hpp"
#include "support.hpp"

using namespace rsm;
using testing::k3;

namespace {

const Rational half = make_rational(1, 2);

Rational chi3(const Rsm& m) { return chromatic_value(m, Rational(3)); }

}  // namespace

TEST_CASE("brute-force expectation examples") {
  const Rsm m = k3();
  const ProbabilityAssignment p(3, half);
  CHECK(expectation_value(m, Model::Restriction, [](const Rsm&) { return Rational(1); }, p) == 1);
  // (27 + 3*18 + 3*12 + 6) / 8
  CHECK(expectation_value(m, Model::Restriction, chi3, p) == make_rational(123, 8));
  CHECK(evaluate(brute_force_expectation(m, Model::Restriction, [](const Rsm& s) { return chromatic(s); }, p), {{"t", Rational(3)}}) == make_rational(123, 8));
  const ProbabilityAssignment one(3, Rational(1));
  CHECK(expectation_value(m, Model::Restriction, chi3, one) == 6);
  CHECK(brute_force_expectation(m, Model::Restriction, [](const Rsm& s) { return tutte(s); }, one) == tutte(m));
  // Contraction at p = 1 contracts everything: only the empty set remains.
  CHECK(expectation_value(m, Model::Contraction, [](const Rsm& s) { return Rational(static_cast<long>(s.size())); }, one) == 0);
}

TEST_CASE("subset probabilities sum to one") {
  testing::Gen gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Rsm m = gen.explicit_rsm(static_cast<std::size_t>(gen.integer(0, 4)));
    const auto p = gen.probabilities(m.size());
    Rational total = 0;
    for (SubsetMask a = 0; a <= m.ground(); ++a) total += subset_probability(m, p, a);
    CHECK(total == 1);
  }
}

TEST_CASE("random minors are restrictions and contractions") {
  const Rsm m = k3();
  CHECK(tables_equal(random_minor(m, Model::Restriction, 0b011), m.restriction(0b011)));
  CHECK(tables_equal(random_minor(m, Model::Contraction, 0b011), m.contraction(0b011)));
  CHECK(parse_model("contraction") == Model::Contraction);
  CHECK_THROWS_AS(parse_model("deletion"), InputError);
}

TEST_CASE("monte carlo") {
  const Rsm m = k3();
  const auto a = monte_carlo(m, Model::Restriction, chi3, {0.5, 0.5, 0.5}, 20000, 9);
  const auto b = monte_carlo(m, Model::Restriction, chi3, {0.5, 0.5, 0.5}, 20000, 9);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
  CHECK(std::abs(a.estimate - 15.375) <= 4 * a.stderr_);

  const auto det = monte_carlo(m, Model::Restriction, chi3, {1.0, 1.0, 1.0}, 1000, 1);
  CHECK(det.estimate == 6.0);
  CHECK(det.stderr_ == 0.0);
  CHECK(det.n == 1000);
  CHECK(det.seed == 1);
  CHECK_THROWS(monte_carlo(m, Model::Restriction, chi3, {0.5}, 10, 1));
}
