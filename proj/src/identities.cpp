#include "rsm/identities.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>

#include "rsm/constructors.hpp"
#include "rsm/geometry.hpp"
#include "rsm/invariants.hpp"

namespace rsm {

const Rational& Params::s(const std::string& name) const {
  auto it = scalar.find(name);
  if (it == scalar.end()) throw InputError("missing parameter " + name);
  return it->second;
}

const std::vector<Rational>& Params::v(const std::string& name) const {
  auto it = vector.find(name);
  if (it == vector.end()) throw InputError("missing parameter " + name);
  return it->second;
}

const std::vector<Rational>& Params::tab(const std::string& name) const {
  auto it = table.find(name);
  if (it == table.end()) throw InputError("missing parameter " + name);
  return it->second;
}

const std::vector<long>& Params::k(const std::string& name) const {
  auto it = ints.find(name);
  if (it == ints.end()) throw InputError("missing parameter " + name);
  return it->second;
}

namespace {

using Rats = std::vector<Rational>;

Rational div(const Rational& a, const Rational& b) {
  if (b == 0) throw PoleError("division by zero");
  return a / b;
}

Rational sign(long k) { return k % 2 == 0 ? Rational(1) : Rational(-1); }

template <class F>
Rational sum_over(std::size_t n, F f) {
  Rational total(0);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < count; ++a) total += f(static_cast<SubsetMask>(a));
  return total;
}

// Entry-wise map over the local elements of m.
template <class F>
Rats each(const Rats& local, F f) {
  Rats out;
  out.reserve(local.size());
  for (std::size_t i = 0; i < local.size(); ++i) out.push_back(f(i));
  return out;
}

Rational product(const Rats& v) {
  Rational out(1);
  for (const auto& x : v) out *= x;
  return out;
}

Rational product_over(SubsetMask a, const Rats& v) {
  Rational out(1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (contains(a, i)) out *= v[i];
  return out;
}

// The common value of p over the local elements of m, if there is one.
std::optional<Rational> uniform(const Rats& local) {
  if (local.empty()) return std::nullopt;
  for (const auto& x : local)
    if (x != local.front()) return std::nullopt;
  return local.front();
}

bool none_equal(const Rsm& m, const ProbabilityAssignment& p, const Rational& bad) {
  for (const auto& x : pull(m, p))
    if (x == bad) return false;
  return true;
}

bool any(const Rsm&) { return true; }
bool has_ambient(const Rsm& m) { return m.meta().ambient_rank.has_value(); }
bool has_lie(const Rsm& m) {
  return m.meta().provenance.multiplicity == MultiplicityKind::lie_group && m.meta().provenance.lie_group.has_value();
}
bool has_finite_lie(const Rsm& m) { return has_lie(m) && m.meta().provenance.lie_group->is_finite(); }
long finite_order(const Rsm& m) { return group_order(m.meta().provenance.lie_group->finite).get_si(); }

bool trivial_multiplicity(const Rsm& m) {
  const std::uint64_t count = std::uint64_t{1} << m.size();
  for (std::uint64_t a = 0; a < count; ++a)
    if (m.mult(static_cast<SubsetMask>(a)) != 1) return false;
  return true;
}

bool rank_at_most_size(const Rsm& m) {
  const std::uint64_t count = std::uint64_t{1} << m.size();
  for (std::uint64_t a = 0; a < count; ++a)
    if (m.rank(static_cast<SubsetMask>(a)) > popcount(static_cast<SubsetMask>(a))) return false;
  return true;
}

// The set A behind a random minor of m.
SubsetMask minor_set(const Rsm& m, const Rsm& minor, Model model) {
  const SubsetMask kept = minor.lift(minor.ground());
  return model == Model::Restriction ? kept : (m.ground() & ~kept);
}

std::vector<long> pull_ints(const Rsm& m, const std::vector<long>& by_label) {
  std::vector<long> out;
  for (std::size_t label : m.labels()) out.push_back(by_label.at(label));
  return out;
}

ParamSpec scalar(const char* name) { return {name, ParamKind::Scalar}; }
ParamSpec vec(const char* name) { return {name, ParamKind::ElementVector}; }
ParamSpec table(const char* name) { return {name, ParamKind::SubsetTable}; }
ParamSpec ints(const char* name) { return {name, ParamKind::PositiveIntVector}; }

using Inner = std::function<Values(const Rsm&, const Rsm&, const Params&)>;
using Rhs = std::function<std::vector<Target>(const Rsm&, const ProbabilityAssignment&, const Params&)>;
using Lhs = std::function<Values(const Rsm&, const ProbabilityAssignment&, const Params&)>;
using Admits = std::function<bool(const Rsm&, const ProbabilityAssignment&)>;

// A probability value where the closed form has a pole.
struct Exclusion {
  Admits admits;
  std::string note;
};

IdentityRecord expectation(std::string id, Model model, std::vector<ParamSpec> params, Inner inner, Rhs rhs,
                           std::function<bool(const Rsm&)> applicable = any, Exclusion excluded = {}) {
  IdentityRecord r;
  r.id = std::move(id);
  r.kind = IdentityKind::Expectation;
  r.model = model;
  r.params = std::move(params);
  r.inner = std::move(inner);
  r.rhs = std::move(rhs);
  r.applicable = std::move(applicable);
  r.admits = std::move(excluded.admits);
  r.pole_note = std::move(excluded.note);
  return r;
}

IdentityRecord pure(std::string id, std::vector<ParamSpec> params, Lhs lhs, Rhs rhs,
                    std::function<bool(const Rsm&)> applicable = any, bool uses_p = false) {
  IdentityRecord r;
  r.id = std::move(id);
  r.kind = IdentityKind::Pure;
  r.params = std::move(params);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.applicable = std::move(applicable);
  r.uses_probabilities = uses_p;
  return r;
}

const Exclusion not_one{[](const Rsm& m, const ProbabilityAssignment& p) { return none_equal(m, p, Rational(1)); },
                        "pole at p_e = 1 (division by 1 - p_e); the closed form covers 0 <= p_e < 1"};
const Exclusion not_half{[](const Rsm& m, const ProbabilityAssignment& p) { return none_equal(m, p, Rational(1, 2)); },
                         "pole at p_e = 1/2 (division by 1 - 2 p_e); the closed form covers p_e != 1/2"};

// Tutte-polynomial rewrites below use Z(q, v) = (v/q)^{r(E)} T(1 + q/v, 1 + v).

std::vector<IdentityRecord> build_expectations() {
  std::vector<IdentityRecord> out;
  const Model res = Model::Restriction, con = Model::Contraction;

  out.push_back(expectation(
      "E-Z", res, {scalar("t"), vec("u")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        return {z_value(sub, x.s("t"), pull(sub, x.v("u")))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p), u = pull(m, x.v("u"));
        return {{0, z_value(m, x.s("t"), each(P, [&](std::size_t i) -> Rational { return P[i] * u[i]; }))}};
      }));

  out.push_back(expectation(
      "E-W", res, {scalar("x"), scalar("y")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        return {rank_nullity_value(sub, x.s("x"), x.s("y"))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& y = x.s("y");
        return {{0, z_value(m, div(y, x.s("x")), each(P, [&](std::size_t i) -> Rational { return P[i] * y; }))}};
      }));

  out.push_back(expectation(
      "E-XMONO", res, {scalar("t")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values { return {rank_monomial_value(sub, x.s("t"))}; },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& t = x.s("t");
        std::vector<Target> out;
        out.push_back({0, product(each(P, [&](std::size_t i) -> Rational { return 1 - P[i]; })) *
                              z_value(m, t, each(P, [&](std::size_t i) -> Rational { return div(P[i], 1 - P[i]); }))});
        if (auto q = uniform(P); q && *q > 0 && *q < 1) {
          const long n = static_cast<long>(m.size()), r = m.full_rank();
          out.push_back({0, pow_int(*q, r) * pow_int(1 - *q, n - r) * pow_int(t, -r) *
                                tutte_value(m, 1 + div(t * (1 - *q), *q), div(Rational(1), 1 - *q))});
        }
        return out;
      },
      any, not_one));

  out.push_back(expectation(
      "E-YMONO", res, {vec("t"), scalar("s")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        return {set_monomial_value(sub, pull(sub, x.v("t"))),
                sub.mult(sub.ground()) * pow_int(x.s("s"), static_cast<long>(sub.size()))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p), t = pull(m, x.v("t"));
        const Rational& s = x.s("s");
        const Rational keep = product(each(P, [&](std::size_t i) -> Rational { return 1 - P[i]; }));
        std::vector<Target> out;
        out.push_back({0, keep * z_value(m, Rational(1),
                                         each(P, [&](std::size_t i) -> Rational { return div(t[i] * P[i], 1 - P[i]); }))});
        out.push_back({1, keep * z_value(m, Rational(1),
                                         each(P, [&](std::size_t i) -> Rational { return div(s * P[i], 1 - P[i]); }))});
        if (auto q = uniform(P); q && *q > 0 && *q < 1) {
          const long n = static_cast<long>(m.size()), r = m.full_rank();
          out.push_back({1, pow_int(*q, r) * pow_int(1 - *q, n - r) * pow_int(s, r) *
                                tutte_value(m, 1 + div(1 - *q, s * *q), 1 + div(s * *q, 1 - *q))});
        }
        return out;
      },
      any, not_one));

  // Layer counts and homomorphism counts share the closed form.
  auto count_rhs = [](bool bivariate) {
    return [bivariate](const Rsm& m, const ProbabilityAssignment& p, const Params&) -> std::vector<Target> {
      const Rats P = pull(m, p);
      const Rational f(finite_order(m));
      const long amb = ambient_rank(m);
      std::vector<Target> out;
      out.push_back({0, pow_int(f, amb) * product(each(P, [&](std::size_t i) -> Rational { return 1 - P[i]; })) *
                            z_value(m, f, each(P, [&](std::size_t i) -> Rational { return div(P[i], 1 - P[i]); }))});
      if (auto q = uniform(P); bivariate && q && *q > 0 && *q < 1) {
        const long n = static_cast<long>(m.size()), r = m.full_rank();
        out.push_back({0, pow_int(f, amb - r) * pow_int(*q, r) * pow_int(1 - *q, n - r) *
                              tutte_value(m, 1 + div(f * (1 - *q), *q), div(Rational(1), 1 - *q))});
      }
      return out;
    };
  };

  out.push_back(expectation(
      "E-CC", res, {},
      [](const Rsm&, const Rsm& sub, const Params&) -> Values { return {Rational(layer_count(sub, sub.ground()))}; },
      count_rhs(false), [](const Rsm& m) { return has_lie(m) && has_ambient(m); }, not_one));

  out.push_back(expectation(
      "E-HOM", res, {},
      [](const Rsm&, const Rsm& sub, const Params&) -> Values {
        return {Rational(quotient_hom_count(sub, sub.ground(), sub.meta().provenance.lie_group->finite))};
      },
      count_rhs(true),
      [](const Rsm& m) { return has_finite_lie(m) && has_ambient(m) && m.meta().provenance.group.has_value(); },
      not_one));

  out.push_back(expectation(
      "E-HALF", res, {ints("k")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        return {Rational(lattice_points_half_open(sub, pull_ints(sub, x.k("k")), false))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const auto k = pull_ints(m, x.k("k"));
        return {{0, product(each(P, [&](std::size_t i) -> Rational { return 1 - P[i]; })) *
                        z_value(m, Rational(1),
                                each(P, [&](std::size_t i) -> Rational { return div(k[i] * P[i], 1 - P[i]); }))}};
      },
      [](const Rsm& m) {
        const auto& g = m.meta().provenance.group;
        return g && g->torsion.empty() && m.meta().provenance.multiplicity == MultiplicityKind::arithmetic &&
               m.full_rank() == static_cast<long>(m.size());
      },
      not_one));

  out.push_back(expectation(
      "E-EHR-MULTI", res, {vec("v")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values { return {ehrhart_value(sub, pull(sub, x.v("v")))}; },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p), v = pull(m, x.v("v"));
        return {{0, ehrhart_value(m, each(P, [&](std::size_t i) -> Rational { return P[i] * v[i]; }))}};
      }));

  out.push_back(expectation(
      "E-EHR", res, {scalar("t")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values { return {ehrhart_value(sub, x.s("t"))}; },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& t = x.s("t");
        std::vector<Target> out;
        out.push_back({0, ehrhart_value(m, each(P, [&](std::size_t i) -> Rational { return P[i] * t; }))});
        if (auto q = uniform(P); q && *q > 0 && rank_at_most_size(m)) {
          const Rational pt = *q * t;
          out.push_back({0, pow_int(pt, m.full_rank()) * tutte_value(m, 1 + div(Rational(1), pt), Rational(1))});
        }
        return out;
      }));

  out.push_back(expectation(
      "E-POTTS", res, {vec("v")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        const Poly z = potts_by_enumeration(sub, sub.meta().provenance.lie_group->finite);
        std::map<std::string, Rational> at;
        for (std::size_t e = 0; e < sub.size(); ++e) at.emplace(var_of(sub, "v", e), x.v("v").at(sub.labels()[e]));
        return {evaluate(z, at)};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p), v = pull(m, x.v("v"));
        const Rational f(finite_order(m));
        return {{0, pow_int(f, ambient_rank(m)) * z_value(m, f, each(P, [&](std::size_t i) -> Rational { return P[i] * v[i]; }))}};
      },
      [](const Rsm& m) { return has_finite_lie(m) && has_ambient(m) && m.meta().provenance.group.has_value(); }));

  out.push_back(expectation(
      "E-CHI-RES", res, {scalar("t")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values { return {chromatic_value(sub, x.s("t"))}; },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& t = x.s("t");
        const long amb = ambient_rank(m);
        std::vector<Target> out;
        out.push_back({0, pow_int(t, amb) * z_value(m, t, each(P, [&](std::size_t i) -> Rational { return -P[i]; }))});
        if (auto q = uniform(P); q && *q > 0) {
          const long r = m.full_rank();
          out.push_back({0, pow_int(-*q, r) * pow_int(t, amb - r) * tutte_value(m, 1 - div(t, *q), 1 - *q)});
        }
        return out;
      },
      has_ambient));

  out.push_back(expectation(
      "E-EULER", res, {},
      [](const Rsm&, const Rsm& sub, const Params&) -> Values {
        return {euler_region_value(sub, *sub.meta().provenance.lie_group)};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params&) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const auto& g = *m.meta().provenance.lie_group;
        const Rational sigma = sign(static_cast<long>(g.a + g.b));
        const Rational t = sigma * Rational(euler_char(g));
        const long amb = ambient_rank(m);
        const Rational total = sum_over(m.size(), [&](SubsetMask a) -> Rational {
          return m.mult(a) * pow_int(t, amb - m.rank(a)) * product_over(a, each(P, [&](std::size_t i) -> Rational { return -P[i]; }));
        });
        return {{0, pow_int(sigma, amb) * total}};
      },
      [](const Rsm& m) { return has_lie(m) && has_ambient(m); }));

  out.push_back(expectation(
      "E-FLOW", res, {scalar("t")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values { return {flow_value(sub, x.s("t"))}; },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& t = x.s("t");
        const Rational half(1, 2);
        SubsetMask b = 0;
        for (std::size_t i = 0; i < P.size(); ++i)
          if (P[i] == half) b |= SubsetMask{1} << i;
        const long nb = popcount(b), rb = m.rank(b);
        const Rational lead = pow_int(half, nb) * pow_int(t, nb - rb);
        if (b == m.ground()) return {{0, lead * m.mult(m.ground())}};
        const Rsm mb = m.contraction(b);
        const Rats Q = pull(mb, p);
        std::vector<Target> out;
        out.push_back({0, lead * product(each(Q, [&](std::size_t i) -> Rational { return 1 - 2 * Q[i]; })) *
                              z_value(mb, t, each(Q, [&](std::size_t i) -> Rational { return div(t * Q[i], 1 - 2 * Q[i]); }))});
        if (auto q = uniform(Q); q && *q > 0) {
          const long n = static_cast<long>(mb.size()), r = mb.full_rank();
          out.push_back({0, lead * pow_int(*q, r) * pow_int(1 - 2 * *q, n - r) *
                                tutte_value(mb, div(1 - *q, *q), 1 + div(t * *q, 1 - 2 * *q))});
        }
        return out;
      }));

  out.push_back(expectation(
      "E-P-CON", con, {scalar("s")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values { return {characteristic_value(sub, x.s("s"))}; },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& s = x.s("s");
        SubsetMask c = 0;
        for (std::size_t i = 0; i < P.size(); ++i)
          if (P[i] == 1) c |= SubsetMask{1} << i;
        if (c == m.ground()) return {{0, m.mult(m.ground())}};
        const Rsm mc = m.contraction(c);
        const Rats Q = pull(mc, p);
        const Rational lead = pow_int(s, m.full_rank() - m.rank(c));
        std::vector<Target> out;
        out.push_back({0, lead * product(each(Q, [&](std::size_t i) -> Rational { return 1 - Q[i]; })) *
                              z_value(mc, s, each(Q, [&](std::size_t i) -> Rational { return div(2 * Q[i] - 1, 1 - Q[i]); }))});
        if (auto q = uniform(Q); q && *q * 2 != 1) {
          const long n = static_cast<long>(mc.size()), r = mc.full_rank();
          out.push_back({0, pow_int(2 * *q - 1, r) * pow_int(1 - *q, n - r) *
                                tutte_value(mc, 1 + div(s * (1 - *q), 2 * *q - 1), div(*q, 1 - *q))});
        }
        return out;
      }));

  out.push_back(expectation(
      "E-CHI-CON", con, {scalar("s")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values { return {chromatic_value(sub, x.s("s"))}; },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& s = x.s("s");
        return {{0, pow_int(s, ambient_rank(m)) * product(each(P, [&](std::size_t i) -> Rational { return 1 - P[i]; })) *
                        z_value(m, s, each(P, [&](std::size_t i) -> Rational { return div(2 * P[i] - 1, 1 - P[i]); }))}};
      },
      has_ambient, not_one));

  out.push_back(expectation(
      "MOD-T", res, {scalar("x"), scalar("y")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        return {pow_int(x.s("x") - 1, -sub.full_rank()) * tutte_value(sub, x.s("x"), x.s("y"))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational xm = x.s("x") - 1, ym = x.s("y") - 1;
        std::vector<Target> out;
        out.push_back({0, z_value(m, xm * ym, each(P, [&](std::size_t i) -> Rational { return P[i] * ym; }))});
        if (auto q = uniform(P); q && *q > 0)
          out.push_back({0, pow_int(div(*q, xm), m.full_rank()) * tutte_value(m, 1 + div(xm, *q), 1 + *q * ym)});
        return out;
      }));

  out.push_back(expectation(
      "E-T2Y", res, {scalar("y")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values { return {tutte_value(sub, Rational(2), x.s("y"))}; },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational ym = x.s("y") - 1;
        std::vector<Target> out;
        out.push_back({0, z_value(m, ym, each(P, [&](std::size_t i) -> Rational { return P[i] * ym; }))});
        if (auto q = uniform(P); q && *q > 0)
          out.push_back({0, pow_int(*q, m.full_rank()) * tutte_value(m, 1 + div(Rational(1), *q), 1 + *q * ym)});
        return out;
      }));

  out.push_back(expectation(
      "E-TX2", con, {scalar("x")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values { return {tutte_value(sub, x.s("x"), Rational(2))}; },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational xm = x.s("x") - 1;
        std::vector<Target> out;
        out.push_back({0, pow_int(xm, m.full_rank()) * product(each(P, [&](std::size_t i) -> Rational { return 1 - P[i]; })) *
                              z_value(m, xm, each(P, [&](std::size_t i) -> Rational { return div(Rational(1), 1 - P[i]); }))});
        if (auto q = uniform(P); q) {
          const long n = static_cast<long>(m.size()), r = m.full_rank();
          out.push_back({0, pow_int(1 - *q, n - r) * tutte_value(m, 1 + (1 - *q) * xm, div(2 - *q, 1 - *q))});
        }
        return out;
      },
      any, not_one));

  out.push_back(expectation(
      "MOD-P", res, {scalar("t")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        return {pow_int(x.s("t"), -sub.full_rank()) * characteristic_value(sub, x.s("t"))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& t = x.s("t");
        std::vector<Target> out;
        out.push_back({0, z_value(m, t, each(P, [&](std::size_t i) -> Rational { return -P[i]; }))});
        if (auto q = uniform(P); q && *q > 0) {
          const long r = m.full_rank();
          out.push_back({0, pow_int(-*q, r) * pow_int(t, -r) * tutte_value(m, 1 - div(t, *q), 1 - *q)});
        }
        return out;
      }));

  out.push_back(expectation(
      "MOD-F", res, {scalar("t")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        return {sign(static_cast<long>(sub.size())) * flow_value(sub, x.s("t"))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& t = x.s("t");
        std::vector<Target> out;
        out.push_back({0, z_value(m, t, each(P, [&](std::size_t i) -> Rational { return -t * P[i]; }))});
        if (auto q = uniform(P); q && *q > 0)
          out.push_back({0, pow_int(-*q, m.full_rank()) * tutte_value(m, 1 - div(Rational(1), *q), 1 - t * *q)});
        return out;
      }));

  out.push_back(expectation(
      "MOD-Z-RES", res, {scalar("t"), vec("u")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        return {sign(static_cast<long>(sub.size())) * z_value(sub, x.s("t"), pull(sub, x.v("u")))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p), u = pull(m, x.v("u"));
        return {{0, product(each(P, [&](std::size_t i) -> Rational { return 1 - 2 * P[i]; })) *
                        z_value(m, x.s("t"), each(P, [&](std::size_t i) -> Rational { return div(u[i] * P[i], 2 * P[i] - 1); }))}};
      },
      any, not_half));

  out.push_back(expectation(
      "MOD-T2", res, {scalar("x"), scalar("y")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        return {sign(static_cast<long>(sub.size())) * pow_int(x.s("x") - 1, -sub.full_rank()) *
                tutte_value(sub, x.s("x"), x.s("y"))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational xm = x.s("x") - 1, ym = x.s("y") - 1;
        std::vector<Target> out;
        out.push_back({0, product(each(P, [&](std::size_t i) -> Rational { return 1 - 2 * P[i]; })) *
                              z_value(m, xm * ym, each(P, [&](std::size_t i) -> Rational { return div(ym * P[i], 2 * P[i] - 1); }))});
        if (auto q = uniform(P); q && *q > 0) {
          const long n = static_cast<long>(m.size()), r = m.full_rank();
          out.push_back({0, pow_int(1 - 2 * *q, n - r) * pow_int(div(-*q, xm), r) *
                                tutte_value(m, 1 + div(xm * (2 * *q - 1), *q), 1 + div(*q * ym, 2 * *q - 1))});
        }
        return out;
      },
      any, not_half));

  out.push_back(expectation(
      "MOD-P2", res, {scalar("t")},
      [](const Rsm&, const Rsm& sub, const Params& x) -> Values {
        return {sign(static_cast<long>(sub.size())) * pow_int(x.s("t"), -sub.full_rank()) *
                characteristic_value(sub, x.s("t"))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& t = x.s("t");
        std::vector<Target> out;
        out.push_back({0, product(each(P, [&](std::size_t i) -> Rational { return 1 - 2 * P[i]; })) *
                              z_value(m, t, each(P, [&](std::size_t i) -> Rational { return div(P[i], 1 - 2 * P[i]); }))});
        if (auto q = uniform(P); q && *q > 0) {
          const long n = static_cast<long>(m.size()), r = m.full_rank();
          out.push_back({0, pow_int(1 - 2 * *q, n - r) * pow_int(*q, r) * pow_int(t, -r) *
                                tutte_value(m, 1 + div(t * (1 - 2 * *q), *q), div(1 - *q, 1 - 2 * *q))});
        }
        return out;
      },
      any, not_half));

  out.push_back(expectation(
      "COR-00", res, {},
      [](const Rsm&, const Rsm& sub, const Params&) -> Values {
        return {tutte_value(sub, Rational(0), Rational(0)),
                sign(static_cast<long>(sub.size())) * characteristic_value(sub, Rational(1))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params&) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational c1 = product(each(P, [&](std::size_t i) -> Rational { return 1 - 2 * P[i]; })) *
                            z_value(m, Rational(1), each(P, [&](std::size_t i) -> Rational { return div(P[i], 1 - 2 * P[i]); }));
        std::vector<Target> out{{0, c1}, {1, c1}};
        if (auto q = uniform(P); q && *q > 0)
          out.push_back({0, pow_int(*q, static_cast<long>(m.size())) *
                                tutte_value(m, div(1 - *q, *q), div(1 - *q, 1 - 2 * *q))});
        return out;
      },
      is_free, not_half));

  out.push_back(expectation(
      "MOD-Z-CON", con, {scalar("s"), vec("v")},
      [](const Rsm& m, const Rsm& sub, const Params& x) -> Values {
        const SubsetMask a = minor_set(m, sub, Model::Contraction);
        const Rats v = pull(m, x.v("v"));
        const Rational& s = x.s("s");
        return {pow_int(s, -m.rank(a)) * sign(popcount(a)) * product_over(a, v) * z_value(sub, s, pull(sub, x.v("v")))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p), v = pull(m, x.v("v"));
        return {{0, product(each(P, [&](std::size_t i) -> Rational { return 1 - P[i]; })) *
                        z_value(m, x.s("s"), each(P, [&](std::size_t i) -> Rational { return div(v[i] * (1 - 2 * P[i]), 1 - P[i]); }))}};
      },
      any, not_one));

  out.push_back(expectation(
      "COR-T2-CON", con, {scalar("x"), scalar("y")},
      [](const Rsm& m, const Rsm& sub, const Params& x) -> Values {
        const SubsetMask a = minor_set(m, sub, Model::Contraction);
        return {sign(popcount(a)) * pow_int(x.s("y") - 1, popcount(a) - m.rank(a)) *
                tutte_value(sub, x.s("x"), x.s("y"))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational xm = x.s("x") - 1, ym = x.s("y") - 1;
        std::vector<Target> out;
        out.push_back({0, pow_int(xm, m.full_rank()) * product(each(P, [&](std::size_t i) -> Rational { return 1 - P[i]; })) *
                              z_value(m, xm * ym, each(P, [&](std::size_t i) -> Rational { return div(ym * (1 - 2 * P[i]), 1 - P[i]); }))});
        if (auto q = uniform(P); q && *q * 2 != 1) {
          const long n = static_cast<long>(m.size()), r = m.full_rank();
          out.push_back({0, pow_int(1 - *q, n - r) * pow_int(1 - 2 * *q, r) *
                                tutte_value(m, 1 + div(xm * (1 - *q), 1 - 2 * *q), 1 + div(ym * (1 - 2 * *q), 1 - *q))});
        }
        return out;
      },
      any, not_one));

  out.push_back(expectation(
      "MOD-F-CON", con, {scalar("t")},
      [](const Rsm& m, const Rsm& sub, const Params& x) -> Values {
        const SubsetMask a = minor_set(m, sub, Model::Contraction);
        return {sign(popcount(a)) * pow_int(x.s("t"), popcount(a) - m.rank(a)) * flow_value(sub, x.s("t"))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        const Rational& t = x.s("t");
        std::vector<Target> out;
        out.push_back({0, product(each(P, [&](std::size_t i) -> Rational { return P[i] - 1; })) *
                              z_value(m, t, each(P, [&](std::size_t i) -> Rational { return div(t * (1 - 2 * P[i]), P[i] - 1); }))});
        if (auto q = uniform(P); q && *q * 2 != 1) {
          const long n = static_cast<long>(m.size()), r = m.full_rank();
          out.push_back({0, pow_int(*q - 1, n - r) * pow_int(1 - 2 * *q, r) *
                                tutte_value(m, div(*q, 2 * *q - 1), 1 + div(t * (1 - 2 * *q), *q - 1))});
        }
        return out;
      },
      any, not_one));

  return out;
}

// Second rsm on the same ranked set, multiplicity from a table.
Rsm with_table(const Rsm& m, const Rats& table) { return Rsm::from_tables(m.rank_table(), table); }

Rsm product_multiplicity(const Rsm& m, const Rats& table) {
  Rats prod = m.mult_table();
  for (std::size_t a = 0; a < prod.size(); ++a) prod[a] *= table[a];
  return Rsm::from_tables(m.rank_table(), std::move(prod));
}

Rats per_subset(std::size_t n, const std::function<Rational(SubsetMask)>& f) {
  Rats out;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < count; ++a) out.push_back(f(static_cast<SubsetMask>(a)));
  return out;
}

std::vector<Target> one_to_one(const Rats& values) {
  std::vector<Target> out;
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({i, values[i]});
  return out;
}

bool arrangement_matroid(const Rsm& m) { return has_ambient(m) && trivial_multiplicity(m) && check_matroid(m); }

// Exact expectation of f over M|E_q, q indexed by root label.
Rational expect_res(const Rsm& m, const ProbabilityAssignment& q, const std::function<Rational(const Rsm&)>& f) {
  return expectation_value(m, Model::Restriction, f, q);
}

std::vector<IdentityRecord> build_pure() {
  std::vector<IdentityRecord> out;

  out.push_back(pure(
      "WANG", {table("f"), table("g")},
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> Values {
        const auto &f = x.tab("f"), &g = x.tab("g");
        return {sum_over(m.size(), [&](SubsetMask t) -> Rational { return sign(popcount(t)) * f[t] * g[t]; })};
      },
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> std::vector<Target> {
        const auto &f = x.tab("f"), &g = x.tab("g");
        const SubsetMask full = m.ground();
        return {{0, sum_over(m.size(), [&](SubsetMask a) -> Rational {
                   Rational left(0), right(0);
                   for (SubsetMask b = a;; b = (b - 1) & a) {
                     left += sign(popcount(b)) * f[b];
                     if (b == 0) break;
                   }
                   const SubsetMask rest = full & ~a;
                   for (SubsetMask c = rest;; c = (c - 1) & rest) {
                     right += sign(popcount(c)) * g[a | c];
                     if (c == 0) break;
                   }
                   return left * right;
                 })}};
      }));

  out.push_back(pure(
      "CONV-Z", {scalar("t"), scalar("s"), vec("u"), vec("v"), table("m2")},
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> Values {
        const Rats u = pull(m, x.v("u")), v = pull(m, x.v("v"));
        const Rsm m12 = product_multiplicity(m, x.tab("m2"));
        return {z_value(m12, x.s("t") * x.s("s"), each(u, [&](std::size_t i) -> Rational { return u[i] * v[i]; }))};
      },
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> std::vector<Target> {
        const Rats u = pull(m, x.v("u")), v = pull(m, x.v("v"));
        const Rsm m2 = with_table(m, x.tab("m2"));
        const Rational &t = x.s("t"), &s = x.s("s");
        const Rats neg_v = each(v, [&](std::size_t i) -> Rational { return -v[i]; });
        return {{0, sum_over(m.size(), [&](SubsetMask a) -> Rational {
                   const Rsm left = m.restriction(a), right = m2.contraction(a);
                   Rats neg_u = pull(left, x.v("u"));
                   for (auto& e : neg_u) e = -e;
                   return pow_int(s, -m.rank(a)) * product_over(a, neg_v) * z_value(left, t, neg_u) *
                          z_value(right, s, pull(right, x.v("v")));
                 })}};
      }));

  out.push_back(pure(
      "CONV-T", {scalar("a"), scalar("b"), scalar("c"), scalar("d"), table("m2")},
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> Values {
        const Rsm m12 = product_multiplicity(m, x.tab("m2"));
        return {tutte_value(m12, 1 - x.s("a") * x.s("b"), 1 - x.s("c") * x.s("d"))};
      },
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> std::vector<Target> {
        const Rsm m2 = with_table(m, x.tab("m2"));
        const Rational &a = x.s("a"), &b = x.s("b"), &c = x.s("c"), &d = x.s("d");
        const long re = m.full_rank();
        return {{0, sum_over(m.size(), [&](SubsetMask s) -> Rational {
                   const long r = m.rank(s);
                   return pow_int(a, re - r) * pow_int(d, popcount(s) - r) * tutte_value(m.restriction(s), 1 - a, 1 - c) *
                          tutte_value(m2.contraction(s), 1 - b, 1 - d);
                 })}};
      }));

  // Restriction half for Z, T, P, F and contraction half through the dual.
  out.push_back(pure(
      "DUAL-EXP", {scalar("t"), scalar("x"), scalar("y"), vec("u")},
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> Values {
        const Rational &t = x.s("t"), &xv = x.s("x"), &yv = x.s("y");
        const auto& u = x.v("u");
        Values out;
        out.push_back(expect_res(m, p, [&](const Rsm& s) -> Rational { return z_value(s, t, pull(s, u)); }));
        out.push_back(expect_res(m, p, [&](const Rsm& s) -> Rational { return tutte_value(s, xv, yv); }));
        out.push_back(expect_res(m, p, [&](const Rsm& s) -> Rational { return characteristic_value(s, t); }));
        out.push_back(expect_res(m, p, [&](const Rsm& s) -> Rational { return flow_value(s, t); }));
        out.push_back(expectation_value(m, Model::Contraction, [&](const Rsm& s) -> Rational { return tutte_value(s, xv, yv); }, p));
        out.push_back(expectation_value(m, Model::Contraction, [&](const Rsm& s) -> Rational { return characteristic_value(s, t); }, p));
        out.push_back(expectation_value(m, Model::Contraction, [&](const Rsm& s) -> Rational { return flow_value(s, t); }, p));
        return out;
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rational &t = x.s("t"), &xv = x.s("x"), &yv = x.s("y");
        const auto& u = x.v("u");
        ProbabilityAssignment q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) q[i] = 1 - p[i];
        // E[H(M | complement of E_{1-p})]
        auto complement = [&](const std::function<Rational(const Rsm&)>& h) -> Rational {
          return sum_over(m.size(), [&](SubsetMask a) -> Rational {
            const Rational w = subset_probability(m, q, a);
            if (w == 0) return Rational(0);
            return w * h(m.restriction(m.ground() & ~a));
          });
        };
        const Rsm dual = m.dual();
        Values rhs;
        rhs.push_back(complement([&](const Rsm& s) -> Rational { return z_value(s, t, pull(s, u)); }));
        rhs.push_back(complement([&](const Rsm& s) -> Rational { return tutte_value(s, xv, yv); }));
        rhs.push_back(complement([&](const Rsm& s) -> Rational { return characteristic_value(s, t); }));
        rhs.push_back(complement([&](const Rsm& s) -> Rational { return flow_value(s, t); }));
        rhs.push_back(expect_res(dual, q, [&](const Rsm& s) -> Rational { return tutte_value(s, yv, xv); }));
        rhs.push_back(expect_res(dual, q, [&](const Rsm& s) -> Rational { return flow_value(s, t); }));
        rhs.push_back(expect_res(dual, q, [&](const Rsm& s) -> Rational { return characteristic_value(s, t); }));
        return one_to_one(rhs);
      },
      any, true));

  out.push_back(pure(
      "PROP-T1", {scalar("s"), vec("u"), vec("v")},
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> Values {
        const Rats u = pull(m, x.v("u")), v = pull(m, x.v("v"));
        return {z_value(m, x.s("s"), each(u, [&](std::size_t i) -> Rational { return u[i] * v[i]; }))};
      },
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> std::vector<Target> {
        const Rats u = pull(m, x.v("u")), v = pull(m, x.v("v"));
        const Rational& s = x.s("s");
        const Rats w = each(u, [&](std::size_t i) -> Rational { return -v[i] * (1 - u[i]); });
        return {{0, sum_over(m.size(), [&](SubsetMask a) -> Rational {
                   const Rsm c = m.contraction(a);
                   return pow_int(s, -m.rank(a)) * product_over(a, w) * z_value(c, s, pull(c, x.v("v")));
                 })}};
      }));

  out.push_back(pure(
      "COR-T1V", {scalar("s"), vec("u")},
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> Values {
        const Rats u = pull(m, x.v("u"));
        const Rational& s = x.s("s");
        return {pow_int(s, m.full_rank()) * z_value(m, s, each(u, [&](std::size_t i) -> Rational { return -u[i]; }))};
      },
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> std::vector<Target> {
        const Rats u = pull(m, x.v("u"));
        const Rats w = each(u, [&](std::size_t i) -> Rational { return 1 - u[i]; });
        return {{0, sum_over(m.size(), [&](SubsetMask a) -> Rational {
                   return product_over(a, w) * characteristic_value(m.contraction(a), x.s("s"));
                 })}};
      }));

  out.push_back(pure(
      "EQ-MB", {scalar("t"), vec("u")},
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> Values {
        const Rational& t = x.s("t");
        const long re = m.full_rank();
        return per_subset(m.size(), [&](SubsetMask b) -> Rational {
          const Rsm c = m.contraction(b);
          Rats neg = pull(c, x.v("u"));
          for (auto& e : neg) e = -e;
          return pow_int(t, re - m.rank(b)) * z_value(c, t, neg);
        });
      },
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> std::vector<Target> {
        const Rats u = pull(m, x.v("u"));
        const Rats w = each(u, [&](std::size_t i) -> Rational { return 1 - u[i]; });
        const Rats p_of = per_subset(m.size(), [&](SubsetMask t) -> Rational {
          return characteristic_value(m.contraction(t), x.s("t"));
        });
        const SubsetMask full = m.ground();
        return one_to_one(per_subset(m.size(), [&](SubsetMask b) -> Rational {
          Rational total(0);
          const SubsetMask rest = full & ~b;
          for (SubsetMask c = rest;; c = (c - 1) & rest) {
            total += product_over(c, w) * p_of[b | c];
            if (c == 0) break;
          }
          return total;
        }));
      }));

  out.push_back(pure(
      "EQ-BB", {scalar("t"), vec("u")},
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> Values {
        const Rational& t = x.s("t");
        const long ell = ambient_rank(m);
        Values out;
        for (SubsetMask b : flats(m)) {
          const Rsm c = m.contraction(b);
          Rats neg = pull(c, x.v("u"));
          for (auto& e : neg) e = -e;
          out.push_back(pow_int(t, ell - m.rank(b)) * z_value(c, t, neg));
        }
        return out;
      },
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> std::vector<Target> {
        const Rats u = pull(m, x.v("u"));
        const Rats w = each(u, [&](std::size_t i) -> Rational { return 1 - u[i]; });
        const auto all = flats(m);
        Rats chi;
        for (SubsetMask f : all) chi.push_back(chromatic_value(m.contraction(f), x.s("t")));
        Rats out;
        for (SubsetMask b : all) {
          Rational total(0);
          for (std::size_t j = 0; j < all.size(); ++j)
            if ((all[j] & b) == b) total += product_over(all[j] & ~b, w) * chi[j];
          out.push_back(total);
        }
        return one_to_one(out);
      },
      arrangement_matroid));

  out.push_back(pure(
      "OS83", {scalar("t")},
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> Values {
        const auto all = flats(m);
        Rats chi;
        for (SubsetMask f : all) chi.push_back(chromatic_value(m.contraction(f), x.s("t")));
        Values out;
        for (SubsetMask b : all) {
          Rational total(0);
          for (std::size_t j = 0; j < all.size(); ++j)
            if ((all[j] & b) == b) total += chi[j];
          out.push_back(total);
        }
        return out;
      },
      [](const Rsm& m, const ProbabilityAssignment&, const Params& x) -> std::vector<Target> {
        Rats out;
        for (SubsetMask b : flats(m)) out.push_back(pow_int(x.s("t"), ambient_rank(m) - m.rank(b)));
        return one_to_one(out);
      },
      arrangement_matroid));

  out.push_back(pure(
      "CONV-ZONO", {vec("v")},
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> Values {
        const Rats P = pull(m, p), v = pull(m, x.v("v"));
        return {ehrhart_value(m, each(P, [&](std::size_t i) -> Rational { return P[i] * v[i]; }))};
      },
      [](const Rsm& m, const ProbabilityAssignment& p, const Params& x) -> std::vector<Target> {
        const Rats P = pull(m, p);
        return {{0, sum_over(m.size(), [&](SubsetMask a) -> Rational {
                   // Unit cube factor: the free rank-d matroid evaluated at -p on E \ A.
                   Rats neg;
                   for (std::size_t i = 0; i < P.size(); ++i)
                     if (!contains(a, i)) neg.push_back(-P[i]);
                   const std::size_t d = neg.size();
                   std::vector<long> ranks(std::size_t{1} << d);
                   for (std::size_t c = 0; c < ranks.size(); ++c) ranks[c] = popcount(static_cast<SubsetMask>(c));
                   const Rsm cube = Rsm::from_tables(std::move(ranks), Rats(std::size_t{1} << d, Rational(1)));
                   const Rsm sub = m.restriction(a);
                   return product_over(a, P) * ehrhart_value(sub, pull(sub, x.v("v"))) * ehrhart_value(cube, neg);
                 })}};
      },
      any, true));

  return out;
}

}  // namespace

const std::vector<IdentityRecord>& identity_registry() {
  static const std::vector<IdentityRecord> registry = [] {
    auto all = build_expectations();
    for (auto& r : build_pure()) all.push_back(std::move(r));
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return all;
  }();
  return registry;
}

const IdentityRecord& find_identity(std::string_view id) {
  for (const auto& r : identity_registry())
    if (r.id == id) return r;
  throw InputError("unknown identity id '" + std::string(id) + "'");
}

Values evaluate_lhs(const IdentityRecord& rec, const Rsm& m, const ProbabilityAssignment& p, const Params& params) {
  if (rec.kind == IdentityKind::Pure) return rec.lhs(m, p, params);
  return expectation_values(
      m, rec.model, [&](const Rsm& minor) { return rec.inner(m, minor, params); }, p);
}

namespace {

void require_applicable(const IdentityRecord& rec, const Rsm& m, const ProbabilityAssignment& p) {
  if (!rec.applicable(m)) throw PreconditionError(rec.id + " does not apply to this rsm");
  if ((rec.kind == IdentityKind::Expectation || rec.uses_probabilities)) {
    for (std::size_t label : m.labels()) {
      if (label >= p.size()) throw InputError("missing probability for element " + std::to_string(label));
      if (p[label] < 0 || p[label] > 1) throw InputError("probabilities must lie in [0, 1]");
    }
    if (rec.admits && !rec.admits(m, p))
      throw PoleError(rec.id + ": " + (rec.pole_note.empty() ? "pole at this probability vector" : rec.pole_note));
  }
}

}  // namespace

Rational closed_form(const IdentityRecord& rec, const Rsm& m, const ProbabilityAssignment& p, const Params& params) {
  require_applicable(rec, m, p);
  const auto targets = rec.rhs(m, p, params);
  if (targets.empty()) throw PreconditionError(rec.id + " has no closed form here");
  return targets.front().value;
}

PointOutcome check_point(const IdentityRecord& rec, const Rsm& m, const ProbabilityAssignment& p, const Params& params) {
  require_applicable(rec, m, p);
  const Values lhs = evaluate_lhs(rec, m, p, params);
  const auto targets = rec.rhs(m, p, params);
  if (targets.empty()) return {false, "no closed form"};
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& t = targets[i];
    if (t.lhs >= lhs.size()) return {false, "target " + std::to_string(i) + " points past the left-hand side"};
    if (lhs[t.lhs] != t.value)
      return {false, "target " + std::to_string(i) + ": lhs " + to_string(lhs[t.lhs]) + " rhs " + to_string(t.value)};
  }
  return {true, ""};
}

namespace {

std::size_t label_count(const Rsm& m) {
  std::size_t n = 0;
  for (std::size_t l : m.labels()) n = std::max(n, l + 1);
  return n;
}

template <class T>
T uniform_int(std::mt19937_64& rng, T lo, T hi) {
  return std::uniform_int_distribution<T>(lo, hi)(rng);
}

// Probability in (0, 1) with denominator 3..97, never 1/2.
Rational generic_probability(std::mt19937_64& rng) {
  for (;;) {
    const long den = uniform_int<long>(rng, 3, 97);
    const long num = uniform_int<long>(rng, 1, den - 1);
    Rational q = make_rational(num, den);
    if (q != Rational(1, 2)) return q;
  }
}

Rational random_nonzero(std::mt19937_64& rng) {
  for (;;) {
    const long num = uniform_int<long>(rng, -97, 97);
    if (num == 0) continue;
    return make_rational(num, uniform_int<long>(rng, 1, 97));
  }
}

}  // namespace

std::vector<NamedProbability> probability_schedule(const IdentityRecord& rec, const Rsm& m, std::mt19937_64& rng) {
  if (rec.kind == IdentityKind::Pure && !rec.uses_probabilities) return {{"none", {}}};
  const std::size_t labels = label_count(m);
  auto constant = [&](const Rational& q) { return ProbabilityAssignment(labels, q); };
  std::vector<NamedProbability> out;
  out.push_back({"uniform-1/3", constant(Rational(1, 3))});
  out.push_back({"uniform-1/2", constant(Rational(1, 2))});
  out.push_back({"uniform-1", constant(Rational(1))});
  ProbabilityAssignment random(labels);
  for (auto& q : random) q = generic_probability(rng);
  out.push_back({"random", random});

  // A strict nonempty subset pinned at 1/2 (flows) or 1 (characteristic of contractions).
  auto mixed = [&](const char* name, const Rational& pinned) {
    if (m.size() < 2) return;
    ProbabilityAssignment p(labels);
    for (auto& q : p) q = generic_probability(rng);
    const auto pick = uniform_int<std::uint64_t>(rng, 1, (std::uint64_t{1} << m.size()) - 2);
    for (std::size_t e = 0; e < m.size(); ++e)
      if ((pick >> e) & 1u) p[m.labels()[e]] = pinned;
    out.push_back({name, p});
  };
  if (rec.id == "E-FLOW") mixed("mixed-half", Rational(1, 2));
  if (rec.id == "E-P-CON") mixed("mixed-one", Rational(1));
  return out;
}

Params sample_params(const IdentityRecord& rec, const Rsm& m, std::mt19937_64& rng) {
  Params out;
  const std::size_t labels = label_count(m);
  for (const auto& spec : rec.params) {
    switch (spec.kind) {
      case ParamKind::Scalar:
        out.scalar[spec.name] = random_nonzero(rng);
        break;
      case ParamKind::ElementVector: {
        std::vector<Rational> v(labels);
        for (auto& x : v) x = random_nonzero(rng);
        out.vector[spec.name] = std::move(v);
        break;
      }
      case ParamKind::SubsetTable: {
        std::vector<Rational> t(std::size_t{1} << m.size());
        for (auto& x : t) x = random_nonzero(rng);
        out.table[spec.name] = std::move(t);
        break;
      }
      case ParamKind::PositiveIntVector: {
        std::vector<long> k(labels);
        for (auto& x : k) x = uniform_int<long>(rng, 1, 3);
        out.ints[spec.name] = std::move(k);
        break;
      }
    }
  }
  return out;
}

std::uint64_t derive_seed(std::string_view id, std::string_view instance, std::uint64_t base) {
  // FNV-1a over "id/instance", then one splitmix64 round with the base seed.
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
  };
  mix(id);
  mix("/");
  mix(instance);
  std::uint64_t z = h ^ (base + 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

constexpr int kPoleRetries = 100;

}  // namespace

std::vector<ReportLine> verify_identity(const IdentityRecord& rec, const std::string& instance, const Rsm& m,
                                        std::size_t trials, std::uint64_t seed) {
  std::vector<ReportLine> out;
  if (!rec.applicable(m)) return out;
  std::mt19937_64 rng(derive_seed(rec.id, instance, seed));
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto schedule = probability_schedule(rec, m, rng);
    for (std::size_t k = 0; k < schedule.size(); ++k) {
      const auto& p = schedule[k].p;
      if ((rec.kind == IdentityKind::Expectation || rec.uses_probabilities) && rec.admits && !rec.admits(m, p)) continue;
      ReportLine line{false, rec.id, instance, k * trials + trial, ""};
      int attempt = 0;
      for (; attempt < kPoleRetries; ++attempt) {
        const Params params = sample_params(rec, m, rng);
        try {
          const auto r = check_point(rec, m, p, params);
          line.pass = r.pass;
          line.detail = schedule[k].name + (r.pass ? "" : ": " + r.detail);
          break;
        } catch (const PoleError&) {
          continue;
        } catch (const std::exception& e) {
          line.detail = schedule[k].name + ": " + e.what();
          break;
        }
      }
      if (attempt == kPoleRetries) line.detail = schedule[k].name + ": pole at every sampled point";
      out.push_back(std::move(line));
    }
  }
  return out;
}

std::vector<ReportLine> verify_all(const std::vector<const IdentityRecord*>& ids, const std::vector<NamedRsm>& corpus,
                                   std::size_t trials, std::uint64_t seed) {
  std::vector<std::pair<const IdentityRecord*, const NamedRsm*>> tasks;
  for (const auto* rec : ids)
    for (const auto& inst : corpus) tasks.emplace_back(rec, &inst);
  std::vector<std::vector<ReportLine>> results(tasks.size());
#ifdef RSM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(tasks.size()); ++i) {
    const auto& [rec, inst] = tasks[static_cast<std::size_t>(i)];
    results[static_cast<std::size_t>(i)] = verify_identity(*rec, inst->name, inst->rsm, trials, seed);
  }
  std::vector<ReportLine> out;
  for (auto& r : results)
    for (auto& line : r) out.push_back(std::move(line));
  std::sort(out.begin(), out.end(), [](const ReportLine& a, const ReportLine& b) {
    return std::tie(a.id, a.instance, a.index) < std::tie(b.id, b.instance, b.index);
  });
  return out;
}

std::string format_line(const ReportLine& line) {
  return std::string(line.pass ? "PASS " : "FAIL ") + line.id + " " + line.instance + " " + std::to_string(line.index);
}

}  // namespace rsm
