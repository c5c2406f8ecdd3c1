#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rsm/rational.hpp"

namespace rsm {

using VarId = std::uint32_t;

// Append-only name <-> id table. Ids are never reused, so a Poly stays valid
// while other threads intern new names.
class VarRegistry {
 public:
  VarRegistry();
  VarRegistry(const VarRegistry&) = delete;
  VarRegistry& operator=(const VarRegistry&) = delete;

  VarId intern(std::string_view name);
  std::optional<VarId> find(std::string_view name) const;
  std::string name(VarId id) const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> ids_;
};

VarRegistry& default_registry();

// Per-element variable name, e.g. element_var("v", 3) == "v3".
std::string element_var(std::string_view family, std::size_t index);

// Sorted by VarId, exponents never zero.
using Monomial = std::vector<std::pair<VarId, int>>;

class Poly {
 public:
  Poly() : reg_(&default_registry()) {}
  explicit Poly(const VarRegistry& reg) : reg_(&reg) {}

  static Poly constant(const Rational& c, const VarRegistry& reg = default_registry());
  static Poly variable(std::string_view name, int exp = 1, VarRegistry& reg = default_registry());
  static Poly term(const Rational& c, Monomial m, const VarRegistry& reg = default_registry());

  const VarRegistry& registry() const { return *reg_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::set<VarId> variables() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;

  Poly pow(unsigned e) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.reg_ == b.reg_ && a.terms_ == b.terms_; }

  void add_term(const Monomial& m, const Rational& c);

 private:
  void check_same(const Poly& o) const;

  const VarRegistry* reg_;
  std::map<Monomial, Rational> terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Poly a, const Rational& c);
Poly operator*(const Rational& c, Poly a);
Poly operator+(Poly a, const Rational& c);
Poly operator-(Poly a, const Rational& c);

Monomial monomial_product(const Monomial& a, const Monomial& b);

/// Simultaneous substitution. A variable that occurs with a negative exponent
/// may only be bound to a single nonzero term; binding it to 0 is a PoleError.
Poly substitute(const Poly& p, const std::map<std::string, Poly>& bindings);
Poly substitute(const Poly& p, const std::map<std::string, Rational>& bindings);

/// Every variable of p must be bound.
Rational evaluate(const Poly& p, const std::map<std::string, Rational>& point);

/// Coefficient of var^exp, as a polynomial in the remaining variables.
Poly coefficient_of(const Poly& p, std::string_view var, int exp);

/// Terms ordered by their (name asc, exponent desc) factor lists.
std::string canonical_string(const Poly& p);

}  // namespace rsm
