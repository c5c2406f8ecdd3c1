#include "rsm/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace rsm {

VarRegistry::VarRegistry() {
  for (const char* n : {"q", "t", "s", "x", "y", "v"}) intern(n);
}

VarId VarRegistry::intern(std::string_view name) {
  if (name.empty()) throw InputError("empty variable name");
  {
    std::shared_lock lock(mu_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
  }
  std::unique_lock lock(mu_);
  auto [it, inserted] = ids_.emplace(std::string(name), static_cast<VarId>(names_.size()));
  if (inserted) names_.emplace_back(name);
  return it->second;
}

std::optional<VarId> VarRegistry::find(std::string_view name) const {
  std::shared_lock lock(mu_);
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::string VarRegistry::name(VarId id) const {
  std::shared_lock lock(mu_);
  if (id >= names_.size()) throw InputError("unknown variable id");
  return names_[id];
}

std::size_t VarRegistry::size() const {
  std::shared_lock lock(mu_);
  return names_.size();
}

VarRegistry& default_registry() {
  static VarRegistry reg;
  return reg;
}

std::string element_var(std::string_view family, std::size_t index) {
  return std::string(family) + std::to_string(index);
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      const int e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

Poly Poly::constant(const Rational& c, const VarRegistry& reg) {
  Poly p(reg);
  p.add_term({}, c);
  return p;
}

Poly Poly::variable(std::string_view name, int exp, VarRegistry& reg) {
  Poly p(reg);
  if (exp == 0) {
    p.add_term({}, Rational(1));
  } else {
    p.add_term({{reg.intern(name), exp}}, Rational(1));
  }
  return p;
}

Poly Poly::term(const Rational& c, Monomial m, const VarRegistry& reg) {
  std::sort(m.begin(), m.end());
  Monomial clean;
  for (const auto& [v, e] : m) {
    if (!clean.empty() && clean.back().first == v) {
      clean.back().second += e;
      if (clean.back().second == 0) clean.pop_back();
    } else if (e != 0) {
      clean.emplace_back(v, e);
    }
  }
  Poly p(reg);
  p.add_term(clean, c);
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<VarId> Poly::variables() const {
  std::set<VarId> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) out.insert(v);
  return out;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_same(const Poly& o) const {
  if (reg_ != o.reg_) throw InputError("polynomials over different variable registries");
}

Poly& Poly::operator+=(const Poly& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  check_same(o);
  Poly out(*reg_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
  terms_ = std::move(out.terms_);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = Poly::constant(Rational(1), *reg_);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(const Poly& a, const Poly& b) {
  Poly out = a;
  out *= b;
  return out;
}
Poly operator*(Poly a, const Rational& c) { return a *= c; }
Poly operator*(const Rational& c, Poly a) { return a *= c; }
Poly operator+(Poly a, const Rational& c) {
  a.add_term({}, c);
  return a;
}
Poly operator-(Poly a, const Rational& c) {
  a.add_term({}, -c);
  return a;
}

namespace {

// Power of a bound value, negative exponents only for single nonzero terms.
class PowerCache {
 public:
  explicit PowerCache(const Poly& base) : base_(base) {}

  const Poly& get(int e, const std::string& name) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    Poly value(base_.registry());
    if (e >= 0) {
      value = base_.pow(static_cast<unsigned>(e));
    } else {
      if (base_.is_zero()) throw PoleError("variable " + name + " bound to 0 occurs with a negative exponent");
      if (base_.size() != 1)
        throw InputError("variable " + name + " occurs with a negative exponent; it can only be bound to a single term");
      const auto& [m, c] = *base_.terms().begin();
      Monomial inv = m;
      for (auto& f : inv) f.second = -f.second;
      value = Poly::term(1 / c, inv, base_.registry()).pow(static_cast<unsigned>(-e));
    }
    return cache_.emplace(e, std::move(value)).first->second;
  }

 private:
  const Poly& base_;
  std::map<int, Poly> cache_;
};

}  // namespace

Poly substitute(const Poly& p, const std::map<std::string, Poly>& bindings) {
  const VarRegistry& reg = p.registry();
  std::map<VarId, std::pair<std::string, PowerCache>> bound;
  for (const auto& [name, value] : bindings) {
    if (&value.registry() != &reg) throw InputError("binding for " + name + " uses a different registry");
    if (auto id = reg.find(name)) bound.emplace(*id, std::make_pair(name, PowerCache(value)));
  }
  Poly out(reg);
  for (const auto& [m, c] : p.terms()) {
    Poly acc = Poly::constant(c, reg);
    Monomial rest;
    for (const auto& [v, e] : m) {
      auto it = bound.find(v);
      if (it == bound.end()) {
        rest.emplace_back(v, e);
      } else {
        acc *= it->second.second.get(e, it->second.first);
      }
    }
    if (!rest.empty()) acc *= Poly::term(Rational(1), rest, reg);
    out += acc;
  }
  return out;
}

Poly substitute(const Poly& p, const std::map<std::string, Rational>& bindings) {
  std::map<std::string, Poly> polys;
  for (const auto& [name, value] : bindings) polys.emplace(name, Poly::constant(value, p.registry()));
  return substitute(p, polys);
}

Rational evaluate(const Poly& p, const std::map<std::string, Rational>& point) {
  const VarRegistry& reg = p.registry();
  std::map<VarId, Rational> values;
  for (VarId v : p.variables()) {
    const std::string name = reg.name(v);
    auto it = point.find(name);
    if (it == point.end()) throw InputError("unbound variable " + name);
    values.emplace(v, it->second);
  }
  Rational total(0);
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (const auto& [v, e] : m) term *= pow_int(values.at(v), e);
    total += term;
  }
  return total;
}

Poly coefficient_of(const Poly& p, std::string_view var, int exp) {
  Poly out(p.registry());
  const auto id = p.registry().find(var);
  for (const auto& [m, c] : p.terms()) {
    int e = 0;
    Monomial rest;
    for (const auto& f : m) {
      if (id && f.first == *id) {
        e = f.second;
      } else {
        rest.push_back(f);
      }
    }
    if (e == exp) out.add_term(rest, c);
  }
  return out;
}

namespace {

using Factors = std::vector<std::pair<std::string, int>>;

bool factors_less(const Factors& a, const Factors& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
    if (a[i].second != b[i].second) return a[i].second > b[i].second;
  }
  return a.size() < b.size();
}

}  // namespace

std::string canonical_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Factors, Rational>> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Factors f;
    for (const auto& [v, e] : m) f.emplace_back(p.registry().name(v), e);
    std::sort(f.begin(), f.end());
    terms.emplace_back(std::move(f), c);
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return factors_less(a.first, b.first); });

  std::ostringstream out;
  bool first = true;
  for (const auto& [f, c] : terms) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = abs(c);
    if (f.empty()) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i > 0) out << '*';
      out << f[i].first;
      if (f[i].second != 1) out << '^' << f[i].second;
    }
  }
  return out.str();
}

}  // namespace rsm
