#include "rsm/invariants.hpp"

#include <map>

namespace rsm {

InvariantKind parse_invariant(std::string_view name) {
  static const std::map<std::string, InvariantKind, std::less<>> table = {
      {"Z", InvariantKind::Z},          {"SC", InvariantKind::SC},          {"W", InvariantKind::W},
      {"T", InvariantKind::Tutte},      {"F", InvariantKind::Flow},         {"P", InvariantKind::Char},
      {"chi", InvariantKind::Chromatic}, {"X", InvariantKind::RankMono},     {"Y", InvariantKind::SetMono},
      {"ehr", InvariantKind::EhrMulti}, {"potts", InvariantKind::Potts},
  };
  auto it = table.find(name);
  if (it == table.end()) throw InputError("unknown invariant '" + std::string(name) + "'");
  return it->second;
}

std::string invariant_name(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::Z: return "Z";
    case InvariantKind::SC: return "SC";
    case InvariantKind::W: return "W";
    case InvariantKind::Tutte: return "T";
    case InvariantKind::Flow: return "F";
    case InvariantKind::Char: return "P";
    case InvariantKind::Chromatic: return "chi";
    case InvariantKind::RankMono: return "X";
    case InvariantKind::SetMono: return "Y";
    case InvariantKind::EhrMulti: return "ehr";
    case InvariantKind::Potts: return "potts";
  }
  return "?";
}

long ambient_rank(const Rsm& m) {
  if (!m.meta().ambient_rank) throw MissingMetadataError("this operation needs the ambient rank r(Gamma)");
  return *m.meta().ambient_rank;
}

namespace {

std::vector<VarId> element_ids(const Rsm& m, std::string_view family) {
  std::vector<VarId> ids;
  for (std::size_t e = 0; e < m.size(); ++e) ids.push_back(default_registry().intern(var_of(m, family, e)));
  return ids;
}

VarId id_of(std::string_view name) { return default_registry().intern(name); }

// c * prod_i var_i^exp_i, skipping zero exponents.
Poly make_term(const Rational& c, std::initializer_list<std::pair<VarId, long>> factors,
               const std::vector<VarId>& per_element = {}, SubsetMask a = 0) {
  Monomial mono;
  for (const auto& [v, e] : factors)
    if (e != 0) mono.emplace_back(v, static_cast<int>(e));
  for (std::size_t i = 0; i < per_element.size(); ++i)
    if (contains(a, i)) mono.emplace_back(per_element[i], 1);
  return Poly::term(c, std::move(mono));
}

}  // namespace

Poly multivariate_tutte(const Rsm& m) {
  const VarId q = id_of("q");
  const auto v = element_ids(m, "v");
  return subset_sum(m, [&](SubsetMask a) { return make_term(m.mult(a), {{q, -m.rank(a)}}, v, a); });
}

Poly subset_corank(const Rsm& m) {
  const VarId q = id_of("q");
  const auto v = element_ids(m, "v");
  const long re = m.full_rank();
  return subset_sum(m, [&](SubsetMask a) { return make_term(m.mult(a), {{q, re - m.rank(a)}}, v, a); });
}

Poly rank_nullity(const Rsm& m) {
  const VarId x = id_of("x"), y = id_of("y");
  return subset_sum(m, [&](SubsetMask a) {
    const long r = m.rank(a);
    return make_term(m.mult(a), {{x, r}, {y, popcount(a) - r}});
  });
}

Poly tutte(const Rsm& m) {
  const VarId xm1 = id_of("xm1"), ym1 = id_of("ym1");
  const long re = m.full_rank();
  Poly shifted = subset_sum(m, [&](SubsetMask a) {
    const long r = m.rank(a);
    return make_term(m.mult(a), {{xm1, re - r}, {ym1, popcount(a) - r}});
  });
  for (const auto& [mono, c] : shifted.terms())
    for (const auto& f : mono)
      if (f.second < 0) return shifted;
  return substitute(shifted, std::map<std::string, Poly>{{"xm1", Poly::variable("x") - Rational(1)},
                                                         {"ym1", Poly::variable("y") - Rational(1)}});
}

Poly flow(const Rsm& m) {
  const VarId t = id_of("t");
  const int n = static_cast<int>(m.size());
  return subset_sum(m, [&](SubsetMask a) {
    const int k = popcount(a);
    const Rational sign = (n - k) % 2 == 0 ? 1 : -1;
    return make_term(sign * m.mult(a), {{t, k - m.rank(a)}});
  });
}

Poly characteristic(const Rsm& m) {
  const VarId t = id_of("t");
  const long re = m.full_rank();
  return subset_sum(m, [&](SubsetMask a) {
    const Rational sign = popcount(a) % 2 == 0 ? 1 : -1;
    return make_term(sign * m.mult(a), {{t, re - m.rank(a)}});
  });
}

Poly chromatic(const Rsm& m) {
  const long amb = ambient_rank(m);
  const VarId t = id_of("t");
  return subset_sum(m, [&](SubsetMask a) {
    const Rational sign = popcount(a) % 2 == 0 ? 1 : -1;
    return make_term(sign * m.mult(a), {{t, amb - m.rank(a)}});
  });
}

Poly rank_monomial(const Rsm& m) { return make_term(m.mult(m.ground()), {{id_of("t"), -m.full_rank()}}); }

Poly set_monomial(const Rsm& m) {
  const auto t = element_ids(m, "t");
  return make_term(m.mult(m.ground()), {}, t, m.ground());
}

Poly ehrhart_multivariate(const Rsm& m) {
  const auto v = element_ids(m, "v");
  return subset_sum(m, [&](SubsetMask a) {
    if (m.rank(a) != popcount(a)) return Poly();
    return make_term(m.mult(a), {}, v, a);
  });
}

Poly potts(const Rsm& m) {
  const auto& lie = m.meta().provenance.lie_group;
  if (m.meta().provenance.multiplicity != MultiplicityKind::lie_group || !lie || !lie->is_finite())
    throw MissingMetadataError("the Potts function needs a multiplicity from a finite group F");
  const long amb = ambient_rank(m);
  const Rational f(group_order(lie->finite));
  Poly z = substitute(multivariate_tutte(m), std::map<std::string, Rational>{{"q", f}});
  return z * pow_int(f, amb);
}

Poly compute_invariant(InvariantKind kind, const Rsm& m) {
  switch (kind) {
    case InvariantKind::Z: return multivariate_tutte(m);
    case InvariantKind::SC: return subset_corank(m);
    case InvariantKind::W: return rank_nullity(m);
    case InvariantKind::Tutte: return tutte(m);
    case InvariantKind::Flow: return flow(m);
    case InvariantKind::Char: return characteristic(m);
    case InvariantKind::Chromatic: return chromatic(m);
    case InvariantKind::RankMono: return rank_monomial(m);
    case InvariantKind::SetMono: return set_monomial(m);
    case InvariantKind::EhrMulti: return ehrhart_multivariate(m);
    case InvariantKind::Potts: return potts(m);
  }
  throw InputError("unknown invariant");
}

Poly uniformize(const Poly& p, const Rsm& m, std::string_view family, std::string_view to) {
  std::map<std::string, Poly> bind;
  for (std::size_t e = 0; e < m.size(); ++e) bind.emplace(var_of(m, family, e), Poly::variable(to));
  return substitute(p, bind);
}

std::vector<Rational> pull(const Rsm& m, const std::vector<Rational>& by_label) {
  std::vector<Rational> out;
  out.reserve(m.size());
  for (std::size_t label : m.labels()) {
    if (label >= by_label.size()) throw InputError("per-element value missing for element " + std::to_string(label));
    out.push_back(by_label[label]);
  }
  return out;
}

namespace {

Rational product_over(SubsetMask a, const std::vector<Rational>& v) {
  Rational out(1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (contains(a, i)) out *= v[i];
  return out;
}

template <class F>
Rational sum_subsets(const Rsm& m, F f) {
  Rational total(0);
  const std::uint64_t n = std::uint64_t{1} << m.size();
  for (std::uint64_t a = 0; a < n; ++a) total += f(static_cast<SubsetMask>(a));
  return total;
}

Rational sign_of(long k) { return k % 2 == 0 ? Rational(1) : Rational(-1); }

}  // namespace

Rational z_value(const Rsm& m, const Rational& q, const std::vector<Rational>& v) {
  if (v.size() != m.size()) throw InputError("z_value: need one value per element");
  return sum_subsets(m, [&](SubsetMask a) -> Rational { return m.mult(a) * pow_int(q, -m.rank(a)) * product_over(a, v); });
}

Rational z_value(const Rsm& m, const Rational& q, const Rational& v) {
  return z_value(m, q, std::vector<Rational>(m.size(), v));
}

Rational tutte_value(const Rsm& m, const Rational& x, const Rational& y) {
  const long re = m.full_rank();
  const Rational xm = x - 1, ym = y - 1;
  return sum_subsets(m, [&](SubsetMask a) -> Rational {
    const long r = m.rank(a);
    return m.mult(a) * pow_int(xm, re - r) * pow_int(ym, popcount(a) - r);
  });
}

Rational rank_nullity_value(const Rsm& m, const Rational& x, const Rational& y) {
  return sum_subsets(m, [&](SubsetMask a) -> Rational {
    const long r = m.rank(a);
    return m.mult(a) * pow_int(x, r) * pow_int(y, popcount(a) - r);
  });
}

Rational flow_value(const Rsm& m, const Rational& t) {
  const long n = static_cast<long>(m.size());
  return sum_subsets(m, [&](SubsetMask a) -> Rational {
    const long k = popcount(a);
    return sign_of(n - k) * m.mult(a) * pow_int(t, k - m.rank(a));
  });
}

Rational characteristic_value(const Rsm& m, const Rational& t) {
  const long re = m.full_rank();
  return sum_subsets(m, [&](SubsetMask a) -> Rational { return sign_of(popcount(a)) * m.mult(a) * pow_int(t, re - m.rank(a)); });
}

Rational chromatic_value(const Rsm& m, const Rational& t) {
  const long amb = ambient_rank(m);
  return sum_subsets(m, [&](SubsetMask a) -> Rational { return sign_of(popcount(a)) * m.mult(a) * pow_int(t, amb - m.rank(a)); });
}

Rational rank_monomial_value(const Rsm& m, const Rational& t) { return m.mult(m.ground()) * pow_int(t, -m.full_rank()); }

Rational set_monomial_value(const Rsm& m, const std::vector<Rational>& t) {
  if (t.size() != m.size()) throw InputError("set_monomial_value: need one value per element");
  return m.mult(m.ground()) * product_over(m.ground(), t);
}

Rational ehrhart_value(const Rsm& m, const std::vector<Rational>& v) {
  if (v.size() != m.size()) throw InputError("ehrhart_value: need one value per element");
  return sum_subsets(m, [&](SubsetMask a) -> Rational {
    if (m.rank(a) != popcount(a)) return Rational(0);
    return m.mult(a) * product_over(a, v);
  });
}

Rational ehrhart_value(const Rsm& m, const Rational& v) { return ehrhart_value(m, std::vector<Rational>(m.size(), v)); }

}  // namespace rsm
