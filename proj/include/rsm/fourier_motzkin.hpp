#pragma once

#include <cstddef>
#include <vector>

#include "rsm/rational.hpp"

namespace rsm {

// sum_i coeffs[i] * x_i <= bound
struct LinearInequality {
  std::vector<Rational> coeffs;
  Rational bound;

  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
};

using InequalitySystem = std::vector<LinearInequality>;

/// Eliminates x_var. The result keeps the same dimension with that column
/// zero. Rows that are trivially true are dropped; contradictory constant rows
/// survive as 0 <= bound with bound < 0. Rows are scaled so the first nonzero
/// coefficient has absolute value 1; of rows with equal coefficients only the
/// tightest is kept.
InequalitySystem fourier_motzkin_eliminate(const InequalitySystem& system, std::size_t var);

bool satisfies(const InequalitySystem& system, const std::vector<Rational>& x);

/// True when the system contains a constant row 0 <= b with b < 0.
bool has_contradiction(const InequalitySystem& system);

/// Equality a.x = b as the two rows a.x <= b and -a.x <= -b.
void add_equality(InequalitySystem& system, std::vector<Rational> coeffs, const Rational& bound);

}  // namespace rsm
