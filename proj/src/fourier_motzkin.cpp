#include "rsm/fourier_motzkin.hpp"

#include <algorithm>

namespace rsm {

namespace {

bool is_constant(const LinearInequality& row) {
  return std::all_of(row.coeffs.begin(), row.coeffs.end(), [](const Rational& c) { return c == 0; });
}

void normalize(LinearInequality& row) {
  for (const auto& c : row.coeffs) {
    if (c == 0) continue;
    const Rational scale = 1 / abs(c);
    for (auto& d : row.coeffs) d *= scale;
    row.bound *= scale;
    return;
  }
}

bool row_less(const LinearInequality& a, const LinearInequality& b) {
  if (a.coeffs != b.coeffs) return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
  return a.bound < b.bound;
}

}  // namespace

InequalitySystem fourier_motzkin_eliminate(const InequalitySystem& system, std::size_t var) {
  std::vector<const LinearInequality*> pos, neg;
  InequalitySystem out;
  for (const auto& row : system) {
    if (var >= row.coeffs.size()) throw InputError("elimination variable out of range");
    const int sign = sgn(row.coeffs[var]);
    if (sign > 0) {
      pos.push_back(&row);
    } else if (sign < 0) {
      neg.push_back(&row);
    } else {
      out.push_back(row);
    }
  }
  // p.c * x <= ... and n.c < 0: combine with positive weights to cancel x_var.
  auto combine = [&](const LinearInequality* p, const LinearInequality* n) {
    const Rational wp = -n->coeffs[var];
    const Rational wn = p->coeffs[var];
    LinearInequality row;
    row.coeffs.resize(p->coeffs.size());
    for (std::size_t i = 0; i < row.coeffs.size(); ++i) row.coeffs[i] = wp * p->coeffs[i] + wn * n->coeffs[i];
    row.coeffs[var] = 0;
    row.bound = wp * p->bound + wn * n->bound;
    out.push_back(std::move(row));
  };

  // An equality through x_var (a row and its exact negation) lets us
  // substitute: every other row is paired with one half of it only.
  const LinearInequality *eq_pos = nullptr, *eq_neg = nullptr;
  for (const auto* p : pos) {
    for (const auto* n : neg) {
      if (p->bound != -n->bound) continue;
      bool opposite = true;
      for (std::size_t i = 0; i < p->coeffs.size() && opposite; ++i) opposite = p->coeffs[i] == -n->coeffs[i];
      if (opposite) {
        eq_pos = p;
        eq_neg = n;
        break;
      }
    }
    if (eq_pos) break;
  }

  if (eq_pos) {
    for (const auto* p : pos)
      if (p != eq_pos) combine(p, eq_neg);
    for (const auto* n : neg)
      if (n != eq_neg) combine(eq_pos, n);
  } else {
    for (const auto* p : pos)
      for (const auto* n : neg) combine(p, n);
  }

  InequalitySystem cleaned;
  for (auto& row : out) {
    if (is_constant(row)) {
      if (row.bound >= 0) continue;
      row.bound = -1;  // any contradiction is as good as 0 <= -1
    }
    normalize(row);
    cleaned.push_back(std::move(row));
  }
  // Among rows with the same left side only the smallest bound matters.
  std::sort(cleaned.begin(), cleaned.end(), row_less);
  cleaned.erase(std::unique(cleaned.begin(), cleaned.end(),
                            [](const LinearInequality& a, const LinearInequality& b) { return a.coeffs == b.coeffs; }),
                cleaned.end());
  return cleaned;
}

bool satisfies(const InequalitySystem& system, const std::vector<Rational>& x) {
  for (const auto& row : system) {
    if (row.coeffs.size() != x.size()) throw InputError("point dimension does not match the system");
    Rational lhs(0);
    for (std::size_t i = 0; i < x.size(); ++i) lhs += row.coeffs[i] * x[i];
    if (lhs > row.bound) return false;
  }
  return true;
}

bool has_contradiction(const InequalitySystem& system) {
  return std::any_of(system.begin(), system.end(), [](const LinearInequality& row) { return is_constant(row) && row.bound < 0; });
}

void add_equality(InequalitySystem& system, std::vector<Rational> coeffs, const Rational& bound) {
  LinearInequality le{coeffs, bound};
  for (auto& c : coeffs) c = -c;
  LinearInequality ge{std::move(coeffs), -bound};
  system.push_back(std::move(le));
  system.push_back(std::move(ge));
}

}  // namespace rsm
