#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rsm/polynomial.hpp"
#include "rsm/rsm.hpp"

namespace rsm {

enum class InvariantKind { Z, SC, W, Tutte, Flow, Char, Chromatic, RankMono, SetMono, EhrMulti, Potts };

/// Parses the CLI spelling: Z, SC, W, T, F, P, chi, X, Y, ehr, potts.
InvariantKind parse_invariant(std::string_view name);
std::string invariant_name(InvariantKind kind);

// Polynomial invariants, each from its own defining sum over subsets.
// Per-element variables are named by family and root label (v3, t0, ...).
Poly multivariate_tutte(const Rsm& m);   // q, v<i>
Poly subset_corank(const Rsm& m);        // q, v<i>
Poly rank_nullity(const Rsm& m);         // x, y
Poly tutte(const Rsm& m);                // x, y; xm1, ym1 when negative powers of x-1 or y-1 occur
Poly flow(const Rsm& m);                 // t
Poly characteristic(const Rsm& m);       // t
Poly chromatic(const Rsm& m);            // t; needs r(Gamma)
Poly rank_monomial(const Rsm& m);        // t
Poly set_monomial(const Rsm& m);         // t<i>
Poly ehrhart_multivariate(const Rsm& m); // v<i>
Poly potts(const Rsm& m);                // v<i>; needs a finite lie_group multiplicity and r(Gamma)

Poly compute_invariant(InvariantKind kind, const Rsm& m);

/// Replaces every per-element variable <family><i> of m by the single variable `to`.
Poly uniformize(const Poly& p, const Rsm& m, std::string_view family, std::string_view to);

// Exact numeric kernels. Per-element arguments are indexed by local element.
// 0^0 counts as 1; 0 to a negative power is a PoleError.
Rational z_value(const Rsm& m, const Rational& q, const std::vector<Rational>& v);
Rational z_value(const Rsm& m, const Rational& q, const Rational& v);
Rational tutte_value(const Rsm& m, const Rational& x, const Rational& y);
Rational rank_nullity_value(const Rsm& m, const Rational& x, const Rational& y);
Rational flow_value(const Rsm& m, const Rational& t);
Rational characteristic_value(const Rsm& m, const Rational& t);
Rational chromatic_value(const Rsm& m, const Rational& t);
Rational rank_monomial_value(const Rsm& m, const Rational& t);
Rational set_monomial_value(const Rsm& m, const std::vector<Rational>& t);
Rational ehrhart_value(const Rsm& m, const std::vector<Rational>& v);
Rational ehrhart_value(const Rsm& m, const Rational& v);

/// Picks the entries of a root-indexed vector for the elements of m.
std::vector<Rational> pull(const Rsm& m, const std::vector<Rational>& by_label);

long ambient_rank(const Rsm& m);  // MissingMetadataError when absent

}  // namespace rsm
