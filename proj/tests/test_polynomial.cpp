#include "doctest.h"
#include "rsm/polynomial.hpp"
#include "support.hpp"

using namespace rsm;

namespace {

Poly var(const char* name, int e = 1) { return Poly::variable(name, e); }
Poly c(long n, long d = 1) { return Poly::constant(make_rational(n, d)); }

Poly random_poly(testing::Gen& gen) {
  static const char* names[] = {"q", "v0", "v1"};
  Poly p;
  const int terms = static_cast<int>(gen.integer(0, 4));
  for (int t = 0; t < terms; ++t) {
    Poly m = Poly::constant(gen.rational());
    for (const char* n : names) {
      const int e = static_cast<int>(gen.integer(-2, 2));
      if (e != 0) m *= var(n, e);
    }
    p += m;
  }
  return p;
}

}  // namespace

TEST_CASE("laurent arithmetic examples") {
  const Poly q = var("q");
  CHECK((var("q", -1) + c(1)) * (q - c(1)) == q - var("q", -1));
  const Poly p = q + c(3);
  CHECK((p + (-p)).is_zero());
  CHECK((q + c(1)) * make_rational(1, 2) == c(1, 2) * q + c(1, 2));
}

TEST_CASE("substitution and evaluation") {
  const Poly p = var("q", -1) * var("v0");
  CHECK(substitute(p, std::map<std::string, Rational>{{"q", Rational(2)}, {"v0", Rational(3)}}) == c(3, 2));

  // Single coloop: Z = 1 + v/q, q = (x-1)(y-1), v = y-1, times (x-1). Negative
  // powers of q need a single-term image, so go through xm1 = x-1, ym1 = y-1.
  const Poly z = c(1) + var("v0") * var("q", -1);
  const Poly xm1 = var("xm1"), ym1 = var("ym1");
  const Poly shifted = xm1 * substitute(z, std::map<std::string, Poly>{{"v0", ym1}, {"q", xm1 * ym1}});
  CHECK(substitute(shifted, std::map<std::string, Poly>{{"xm1", var("x") - c(1)}, {"ym1", var("y") - c(1)}}) == var("x"));
  CHECK_THROWS_AS(substitute(z, std::map<std::string, Poly>{{"q", var("x") - c(1)}}), InputError);

  CHECK_THROWS_AS(substitute(var("q", -1) + var("q"), std::map<std::string, Rational>{{"q", Rational(0)}}), PoleError);

  CHECK(evaluate(var("q") - var("q", -1), {{"q", Rational(2)}}) == make_rational(3, 2));
  CHECK(evaluate(c(5), {}) == 5);
  const Poly t = var("t");
  CHECK(evaluate(t * (t - c(1)) * (t - c(2)), {{"t", Rational(3)}}) == 6);
  CHECK_THROWS_AS(evaluate(t, {}), InputError);
}

TEST_CASE("canonical strings") {
  CHECK(canonical_string(Poly()) == "0");
  CHECK(canonical_string(c(1) + c(2) * var("q", -1) * var("v0")) == "1 + 2*q^-1*v0");
  CHECK(canonical_string(var("q") - var("q", -1)) == "q - q^-1");
}

TEST_CASE("coefficient extraction") {
  const Poly p = var("x", 2) * var("y") + c(3) * var("x", 2) + var("y");
  CHECK(coefficient_of(p, "x", 2) == var("y") + c(3));
  CHECK(coefficient_of(p, "x", 0) == var("y"));
  CHECK(coefficient_of(p, "x", 1).is_zero());
}

TEST_CASE("ring laws on random laurent polynomials") {
  testing::Gen gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Poly a = random_poly(gen), b = random_poly(gen), d = random_poly(gen);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * d == a * d + b * d);
    CHECK((a * b) * d == a * (b * d));
    CHECK((a - a).is_zero());
    // Evaluation is a ring homomorphism.
    const std::map<std::string, Rational> at{{"q", gen.rational()}, {"v0", gen.rational()}, {"v1", gen.rational()}};
    CHECK(evaluate(a * b + d, at) == evaluate(a, at) * evaluate(b, at) + evaluate(d, at));
    CHECK(canonical_string(a * b) == canonical_string(b * a));
  }
}

TEST_CASE("pow matches repeated products") {
  const Poly p = var("q") + var("v0", -1);
  CHECK(p.pow(0) == c(1));
  CHECK(p.pow(3) == p * p * p);
}
