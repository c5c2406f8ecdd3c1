#include "rsm/groups.hpp"

#include <string>

namespace rsm {

Integer QuotientStructure::torsion_order() const {
  Integer out(1);
  for (const auto& d : torsion) out *= d;
  return out;
}

AbelianGroupSpec normalized(AbelianGroupSpec g) {
  for (long d : g.torsion)
    if (d < 2) throw InputError("torsion modulus must be > 1, got " + std::to_string(d));
  for (std::size_t k = 0; k < g.elements.size(); ++k) {
    auto& el = g.elements[k];
    if (el.size() != g.width())
      throw InputError("element " + std::to_string(k) + " has " + std::to_string(el.size()) +
                       " coordinates, expected " + std::to_string(g.width()));
    for (std::size_t i = 0; i < g.torsion.size(); ++i) {
      long& c = el[g.free_rank + i];
      const long d = g.torsion[i];
      c = ((c % d) + d) % d;
    }
  }
  return g;
}

QuotientStructure quotient_structure(const AbelianGroupSpec& g, const std::vector<std::vector<long>>& elements) {
  const std::size_t width = g.width();
  for (const auto& el : elements)
    if (el.size() != width) throw InputError("element coordinate count does not match the group");
  // Columns: the lifted elements, then d_i * e_{s+i} for each torsion factor.
  IntMatrix rel(width, elements.size() + g.torsion.size());
  for (std::size_t j = 0; j < elements.size(); ++j)
    for (std::size_t i = 0; i < width; ++i) rel(i, j) = elements[j][i];
  for (std::size_t i = 0; i < g.torsion.size(); ++i) rel(g.free_rank + i, elements.size() + i) = g.torsion[i];

  const SmithForm sf = snf(rel);
  QuotientStructure q;
  q.free_rank = width - sf.rank;
  for (const auto& d : sf.invariant_factors)
    if (d > 1) q.torsion.push_back(d);
  return q;
}

QuotientStructure quotient_structure(const AbelianGroupSpec& g, const std::vector<std::size_t>& indices) {
  std::vector<std::vector<long>> els;
  els.reserve(indices.size());
  for (std::size_t i : indices) els.push_back(g.elements.at(i));
  return quotient_structure(g, els);
}

Integer group_order(const std::vector<long>& factors) {
  Integer out(1);
  for (long f : factors) out *= f;
  return out;
}

Integer hom_count(const std::vector<Integer>& h, const std::vector<long>& f) {
  Integer out(1), g;
  for (const auto& hi : h) {
    for (long fj : f) {
      const Integer fz(fj);
      mpz_gcd(g.get_mpz_t(), hi.get_mpz_t(), fz.get_mpz_t());
      out *= g;
    }
  }
  return out;
}

Integer hom_count(const std::vector<long>& h, const std::vector<long>& f) {
  std::vector<Integer> hz(h.begin(), h.end());
  return hom_count(hz, f);
}

Integer g_multiplicity(const std::vector<Integer>& torsion, const LieGroupSpec& g) {
  Integer out = hom_count(torsion, g.finite);
  Integer p;
  for (const auto& e : torsion) {
    mpz_pow_ui(p.get_mpz_t(), e.get_mpz_t(), g.a);
    out *= p;
  }
  return out;
}

Integer euler_char(const LieGroupSpec& g) { return g.a == 0 ? group_order(g.finite) : Integer(0); }

}  // namespace rsm
