#include "rsm/geometry.hpp"

#include <string>

#include "rsm/fourier_motzkin.hpp"
#include "rsm/int_matrix.hpp"
#include "rsm/invariants.hpp"
#include "rsm/kernels.hpp"

namespace rsm {

namespace {

void check_generators(const Zonotope& z) {
  for (const auto& g : z.generators)
    if (g.size() != z.dimension)
      throw InputError("generator has length " + std::to_string(g.size()) + ", expected " + std::to_string(z.dimension));
}

// Componentwise bounding box of sum [0, 1] s_e e.
void bounding_box(const Zonotope& z, const std::vector<long>& scale, std::vector<long>& lo, std::vector<long>& hi) {
  lo.assign(z.dimension, 0);
  hi.assign(z.dimension, 0);
  for (std::size_t e = 0; e < z.generators.size(); ++e)
    for (std::size_t i = 0; i < z.dimension; ++i) {
      const long c = scale[e] * z.generators[e][i];
      if (c > 0) hi[i] += c;
      else lo[i] += c;
    }
}

std::uint64_t count_box(const std::vector<long>& lo, const std::vector<long>& hi, const kernels::BoxPredicate& pred,
                        bool parallel) {
  return parallel ? kernels::count_box_parallel(lo, hi, pred) : kernels::count_box_serial(lo, hi, pred);
}

}  // namespace

std::uint64_t lattice_points_zonotope(const Zonotope& z, long k, bool parallel) {
  check_generators(z);
  if (z.dimension > kZonotopeMaxDim || z.generators.size() > kZonotopeMaxGenerators || k > kZonotopeMaxDilation)
    throw PreconditionError("zonotope exceeds the enumeration scale (n <= 3, |E| <= 4, k <= 3)");
  if (k < 0) throw InputError("dilation must be nonnegative");
  const std::size_t n = z.dimension, g = z.generators.size(), width = n + g;

  // Variables: x_0 .. x_{n-1}, lambda_0 .. lambda_{g-1}.
  InequalitySystem sys;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(width, Rational(0));
    row[i] = 1;
    for (std::size_t e = 0; e < g; ++e) row[n + e] = -k * z.generators[e][i];
    add_equality(sys, std::move(row), Rational(0));
  }
  for (std::size_t e = 0; e < g; ++e) {
    std::vector<Rational> row(width, Rational(0));
    row[n + e] = 1;
    sys.push_back({row, Rational(1)});
    row[n + e] = -1;
    sys.push_back({row, Rational(0)});
  }
  for (std::size_t e = 0; e < g; ++e) sys = fourier_motzkin_eliminate(sys, n + e);
  if (has_contradiction(sys)) return 0;

  // Only x survives. Clear denominators so each row is a.x <= floor(b) over
  // the integers.
  std::vector<std::vector<long>> rows;
  std::vector<long> bounds;
  for (const auto& row : sys) {
    Integer l = 1;
    for (std::size_t i = 0; i < n; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row.coeffs[i].get_den().get_mpz_t());
    std::vector<long> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = Integer(row.coeffs[i] * l).get_si();
    const Rational b = row.bound * l;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    rows.push_back(std::move(a));
    bounds.push_back(fl.get_si());
  }

  std::vector<long> lo, hi;
  bounding_box(z, std::vector<long>(g, k), lo, hi);
  return count_box(
      lo, hi,
      [&](const std::vector<long>& x) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
          long acc = 0;
          for (std::size_t i = 0; i < n; ++i) acc += rows[r][i] * x[i];
          if (acc > bounds[r]) return false;
        }
        return true;
      },
      parallel);
}

std::uint64_t lattice_points_half_open(const Zonotope& z, const std::vector<long>& k, bool parallel) {
  check_generators(z);
  const std::size_t n = z.dimension, g = z.generators.size();
  if (k.size() != g) throw InputError("need one scaling per generator");
  for (long ke : k)
    if (ke < 1) throw InputError("scalings must be positive");

  IntMatrix a(n, g);
  for (std::size_t e = 0; e < g; ++e)
    for (std::size_t i = 0; i < n; ++i) a(i, e) = k[e] * z.generators[e][i];
  if (rational_rank(a) != g) throw PreconditionError("half-open count needs linearly independent generators");

  // lambda = B^{-1} x on g independent rows, written as mu / d with integer
  // mu = d B^{-1} x; x lies in the span exactly when A mu = d x.
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < n && pivots.size() < g; ++i) {
    IntMatrix b(pivots.size() + 1, g);
    for (std::size_t r = 0; r <= pivots.size(); ++r)
      for (std::size_t c = 0; c < g; ++c) b(r, c) = a(r < pivots.size() ? pivots[r] : i, c);
    if (rational_rank(b) == pivots.size() + 1) pivots.push_back(i);
  }
  std::vector<std::vector<long>> inv;
  long d = 0;
  {
    std::vector<std::vector<Rational>> m(g, std::vector<Rational>(2 * g, Rational(0)));
    for (std::size_t r = 0; r < g; ++r) {
      for (std::size_t c = 0; c < g; ++c) m[r][c] = a(pivots[r], c);
      m[r][g + r] = 1;
    }
    for (std::size_t c = 0; c < g; ++c) {
      std::size_t p = c;
      while (m[p][c] == 0) ++p;
      std::swap(m[p], m[c]);
      const Rational lead = m[c][c];
      for (auto& v : m[c]) v /= lead;
      for (std::size_t r = 0; r < g; ++r)
        if (r != c && m[r][c] != 0) {
          const Rational f = m[r][c];
          for (std::size_t j = 0; j < 2 * g; ++j) m[r][j] -= f * m[c][j];
        }
    }
    Integer den = 1;
    for (std::size_t r = 0; r < g; ++r)
      for (std::size_t c = 0; c < g; ++c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m[r][g + c].get_den().get_mpz_t());
    d = den.get_si();
    inv.assign(g, std::vector<long>(g));
    for (std::size_t r = 0; r < g; ++r)
      for (std::size_t c = 0; c < g; ++c) inv[r][c] = Integer(m[r][g + c] * den).get_si();
  }
  std::vector<std::vector<long>> cols(g, std::vector<long>(n));
  for (std::size_t e = 0; e < g; ++e)
    for (std::size_t i = 0; i < n; ++i) cols[e][i] = a(i, e).get_si();

  std::vector<long> lo, hi;
  bounding_box(z, k, lo, hi);
  return count_box(
      lo, hi,
      [&](const std::vector<long>& x) {
        std::vector<long> mu(g, 0);
        for (std::size_t r = 0; r < g; ++r) {
          for (std::size_t c = 0; c < g; ++c) mu[r] += inv[r][c] * x[pivots[c]];
          if (mu[r] < 0 || mu[r] >= d) return false;
        }
        for (std::size_t i = 0; i < n; ++i) {
          long acc = 0;
          for (std::size_t e = 0; e < g; ++e) acc += cols[e][i] * mu[e];
          if (acc != d * x[i]) return false;
        }
        return true;
      },
      parallel);
}

Zonotope zonotope_of(const Rsm& m) {
  const auto& g = m.meta().provenance.group;
  if (!g) throw MissingMetadataError("rsm has no vector representation");
  if (!g->torsion.empty()) throw PreconditionError("zonotopes need a torsion-free representation");
  return Zonotope{g->free_rank, g->elements};
}

std::uint64_t lattice_points_half_open(const Rsm& m, const std::vector<long>& k, bool parallel) {
  return lattice_points_half_open(zonotope_of(m), k, parallel);
}

Rational ehrhart_closed(const Rsm& m, const Rational& k) {
  if (m.meta().provenance.multiplicity != MultiplicityKind::arithmetic)
    throw MissingMetadataError("the Ehrhart closed form needs an arithmetic multiplicity");
  if (k == 0) return ehrhart_value(m, Rational(0));
  return pow_int(k, m.full_rank()) * tutte_value(m, 1 + 1 / k, Rational(1));
}

Integer layer_count(const Rsm& m, SubsetMask a) {
  const auto& lie = m.meta().provenance.lie_group;
  if (m.meta().provenance.multiplicity != MultiplicityKind::lie_group || !lie)
    throw MissingMetadataError("layer counts need a G-multiplicity");
  const long exp = ambient_rank(m) - m.rank(a);
  if (exp < 0) throw PreconditionError("r(A) exceeds r(Gamma)");
  const Rational mg = m.mult(a);
  Integer f = group_order(lie->finite), p;
  mpz_pow_ui(p.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(exp));
  return Integer(mg.get_num()) * p;
}

std::vector<FlatIdentityRow> arrangement_flat_identities(const Rsm& m) {
  require_matroid(m);
  const long ell = ambient_rank(m);
  const auto all = flats(m);
  std::vector<Poly> chi;
  chi.reserve(all.size());
  for (SubsetMask x : all) chi.push_back(chromatic(m.contraction(x)));

  std::vector<FlatIdentityRow> rows;
  for (SubsetMask b : all) {
    FlatIdentityRow row;
    row.flat = b;
    for (std::size_t j = 0; j < all.size(); ++j)
      if ((all[j] & b) == b) row.lhs += chi[j];
    row.rhs = Poly::variable("t", static_cast<int>(ell - m.rank(b)));
    row.holds = row.lhs == row.rhs;
    rows.push_back(std::move(row));
  }
  return rows;
}

Rational euler_region_value(const Rsm& m, const LieGroupSpec& g) {
  const Rational sigma = (g.a + g.b) % 2 == 0 ? 1 : -1;
  const Rational psi(euler_char(g));
  return pow_int(sigma, ambient_rank(m)) * chromatic_value(m, sigma * psi);
}

}  // namespace rsm
