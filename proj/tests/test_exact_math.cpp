#include <numeric>

#include "doctest.h"
#include "rsm/fourier_motzkin.hpp"
#include "rsm/groups.hpp"
#include "rsm/int_matrix.hpp"
#include "support.hpp"

using namespace rsm;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

// Determinant by cofactor expansion; fine for the 4x4 matrices used here.
Integer det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Integer out = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t cc = 0, k = 0; cc < n; ++cc)
        if (cc != c) minor(r - 1, k++) = m(r, cc);
    const Integer term = m(0, c) * det(minor);
    out += (c % 2 == 0) ? term : Integer(-term);
  }
  return out;
}

// Hom(Z/h1 + ..., Z/f1 + ...) by listing every assignment of generators.
long hom_brute(const std::vector<long>& h, const std::vector<long>& f) {
  long f_order = 1;
  for (long x : f) f_order *= x;
  long count = 1;
  for (long hi : h) {
    long ok = 0;
    for (long idx = 0; idx < f_order; ++idx) {
      long rest = idx;
      bool good = true;
      for (long fj : f) {
        const long x = rest % fj;
        rest /= fj;
        if ((hi * x) % fj != 0) good = false;
      }
      if (good) ++ok;
    }
    count *= ok;
  }
  return count;
}

}  // namespace

TEST_CASE("rationals parse and reduce") {
  CHECK(parse_rational(" 12/8 ") == make_rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK(pow_int(make_rational(2, 3), -2) == make_rational(9, 4));
  CHECK(pow_int(Rational(0), 0) == 1);
  CHECK_THROWS_AS(pow_int(Rational(0), -1), PoleError);
  CHECK(to_string(make_rational(-6, 4)) == "-3/2");
}

TEST_CASE("smith normal form examples") {
  auto a = snf(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(a.invariant_factors == ints({1, 6}));
  CHECK(a.rank == 2);
  auto z = snf(IntMatrix(2, 2));
  CHECK(z.invariant_factors.empty());
  CHECK(z.rank == 0);
  auto r = snf(IntMatrix::from_rows({{2, 4}}));
  CHECK(r.invariant_factors == ints({2}));
  CHECK(r.rank == 1);
}

TEST_CASE("smith normal form: divisibility chain and determinant on random square matrices") {
  testing::Gen gen(101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 4));
    const IntMatrix m = gen.matrix(n, n, 6);
    const auto s = snf(m);
    for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
      CHECK(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
    CHECK(s.rank == rational_rank(m));
    const Integer d = det(m);
    if (s.rank == n) {
      Integer prod = 1;
      for (const auto& f : s.invariant_factors) prod *= f;
      CHECK(prod == abs(d));
    } else {
      CHECK(d == 0);
    }
  }
}

TEST_CASE("quotient structure examples") {
  AbelianGroupSpec z{1, {}, {{2}}};
  auto q = quotient_structure(z, std::vector<std::size_t>{0});
  CHECK(q.free_rank == 0);
  CHECK(q.torsion == ints({2}));

  AbelianGroupSpec zz4{1, {4}, {{0, 2}}};
  q = quotient_structure(zz4, std::vector<std::size_t>{0});
  CHECK(q.free_rank == 1);
  CHECK(q.torsion == ints({2}));

  q = quotient_structure(z, std::vector<std::size_t>{});
  CHECK(q.free_rank == 1);
  CHECK(q.torsion.empty());

  CHECK_THROWS_AS(normalized(AbelianGroupSpec{1, {0}, {{1, 1}}}), InputError);
  CHECK_THROWS_AS(normalized(AbelianGroupSpec{1, {}, {{1, 1}}}), InputError);
}

TEST_CASE("homomorphism counts") {
  CHECK(hom_count(std::vector<long>{2}, {6}) == 2);
  CHECK(hom_count(std::vector<long>{}, {6}) == 1);
  CHECK(hom_count(std::vector<long>{4}, {2, 8}) == 8);
  CHECK(hom_count(std::vector<long>{2, 3}, {6}) == hom_brute({2, 3}, {6}));

  LieGroupSpec g{1, 0, {6}};
  CHECK(g_multiplicity(ints({2}), g) == 4);
  CHECK(g_multiplicity(ints({2, 5}), LieGroupSpec{}) == 1);
  CHECK(euler_char(LieGroupSpec{0, 1, {}}) == 1);
  CHECK(euler_char(LieGroupSpec{1, 0, {}}) == 0);
  CHECK(euler_char(LieGroupSpec{0, 2, {3}}) == 3);
}

TEST_CASE("hom_count matches enumeration on small cyclic pairs") {
  for (long h = 1; h <= 12; ++h)
    for (long f = 1; f <= 12; ++f) CHECK(hom_count(std::vector<long>{h}, {f}) == hom_brute({h}, {f}));
}

TEST_CASE("fourier-motzkin examples") {
  // 0 <= lambda <= 1, x = 2 lambda; variables (x, lambda).
  InequalitySystem s;
  s.push_back({{0, 1}, 1});
  s.push_back({{0, -1}, 0});
  add_equality(s, {1, -2}, 0);
  const auto out = fourier_motzkin_eliminate(s, 1);
  for (long x = -2; x <= 4; ++x) CHECK(satisfies(out, {Rational(x), Rational(0)}) == (x >= 0 && x <= 2));
  CHECK(satisfies(out, {make_rational(3, 2), Rational(0)}));
  for (const auto& row : out) CHECK(row.coeffs[1] == 0);

  CHECK(fourier_motzkin_eliminate({}, 0).empty());

  InequalitySystem bad{{{Rational(-1)}, Rational(-1)}, {{Rational(1)}, Rational(0)}};
  const auto infeasible = fourier_motzkin_eliminate(bad, 0);
  CHECK(has_contradiction(infeasible));
}

TEST_CASE("fourier-motzkin projection agrees with direct search in the plane") {
  testing::Gen gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    InequalitySystem s;
    const int rows = static_cast<int>(gen.integer(2, 5));
    for (int i = 0; i < rows; ++i)
      s.push_back({{Rational(gen.integer(-3, 3)), Rational(gen.integer(-3, 3))}, Rational(gen.integer(-4, 6))});
    // Keep lambda bounded so the search below is exhaustive.
    s.push_back({{Rational(0), Rational(1)}, Rational(4)});
    s.push_back({{Rational(0), Rational(-1)}, Rational(4)});
    const auto proj = fourier_motzkin_eliminate(s, 1);
    for (long x = -5; x <= 5; ++x) {
      bool found = false;
      for (long num = -48; num <= 48 && !found; ++num) found = satisfies(s, {Rational(x), make_rational(num, 12)});
      // Every witness found on the 1/12 grid certifies membership in the projection.
      if (found) CHECK(satisfies(proj, {Rational(x), Rational(0)}));
    }
  }
}
