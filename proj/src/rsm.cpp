#include "rsm/rsm.hpp"

#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "rsm/kernels.hpp"

namespace rsm {

namespace {

class MemoOracle final : public Oracle {
 public:
  MemoOracle(Rsm::RankFn r, Rsm::MultFn m) : rank_fn_(std::move(r)), mult_fn_(std::move(m)) {}

  long rank(SubsetMask a) const override {
    {
      std::shared_lock lock(mu_);
      auto it = ranks_.find(a);
      if (it != ranks_.end()) return it->second;
    }
    const long v = rank_fn_(a);
    std::unique_lock lock(mu_);
    ranks_.emplace(a, v);
    return v;
  }

  Rational mult(SubsetMask a) const override {
    {
      std::shared_lock lock(mu_);
      auto it = mults_.find(a);
      if (it != mults_.end()) return it->second;
    }
    Rational v = mult_fn_(a);
    std::unique_lock lock(mu_);
    mults_.emplace(a, v);
    return v;
  }

 private:
  Rsm::RankFn rank_fn_;
  Rsm::MultFn mult_fn_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<SubsetMask, long> ranks_;
  mutable std::unordered_map<SubsetMask, Rational> mults_;
};

class TableOracle final : public Oracle {
 public:
  TableOracle(std::vector<long> r, std::vector<Rational> m) : rank_(std::move(r)), mult_(std::move(m)) {}
  long rank(SubsetMask a) const override { return rank_.at(a); }
  Rational mult(SubsetMask a) const override { return mult_.at(a); }

 private:
  std::vector<long> rank_;
  std::vector<Rational> mult_;
};

SubsetMask lift_bits(const std::vector<SubsetMask>& bits, SubsetMask local) {
  SubsetMask out = 0;
  for (std::size_t i = 0; local != 0; ++i, local >>= 1)
    if (local & 1u) out |= bits[i];
  return out;
}

class RestrictionOracle final : public Oracle {
 public:
  RestrictionOracle(std::shared_ptr<const Oracle> p, std::vector<SubsetMask> bits) : parent_(std::move(p)), bits_(std::move(bits)) {}
  long rank(SubsetMask a) const override { return parent_->rank(lift_bits(bits_, a)); }
  Rational mult(SubsetMask a) const override { return parent_->mult(lift_bits(bits_, a)); }

 private:
  std::shared_ptr<const Oracle> parent_;
  std::vector<SubsetMask> bits_;
};

class ContractionOracle final : public Oracle {
 public:
  ContractionOracle(std::shared_ptr<const Oracle> p, std::vector<SubsetMask> bits, SubsetMask contracted)
      : parent_(std::move(p)), bits_(std::move(bits)), contracted_(contracted), base_rank_(parent_->rank(contracted)) {}
  long rank(SubsetMask a) const override { return parent_->rank(lift_bits(bits_, a) | contracted_) - base_rank_; }
  Rational mult(SubsetMask a) const override { return parent_->mult(lift_bits(bits_, a) | contracted_); }

 private:
  std::shared_ptr<const Oracle> parent_;
  std::vector<SubsetMask> bits_;
  SubsetMask contracted_;
  long base_rank_;
};

class DualOracle final : public Oracle {
 public:
  DualOracle(std::shared_ptr<const Oracle> p, std::size_t n)
      : parent_(std::move(p)), full_(full_mask(n)), full_rank_(parent_->rank(full_)) {}
  long rank(SubsetMask a) const override { return popcount(a) - full_rank_ + parent_->rank(full_ & ~a); }
  Rational mult(SubsetMask a) const override { return parent_->mult(full_ & ~a); }

 private:
  std::shared_ptr<const Oracle> parent_;
  SubsetMask full_;
  long full_rank_;
};

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

void check_size(std::size_t n) {
  if (n > kMaxGround) throw InputError("ground set of size " + std::to_string(n) + " exceeds the limit of 30");
}

}  // namespace

Rsm Rsm::from_functions(std::size_t n, RankFn rank, MultFn mult, RsmMeta meta) {
  check_size(n);
  auto o = std::make_shared<MemoOracle>(std::move(rank), std::move(mult));
  return Rsm(std::move(o), iota(n), iota(n), std::move(meta));
}

Rsm Rsm::from_tables(std::vector<long> rank, std::vector<Rational> mult, RsmMeta meta) {
  if (rank.size() != mult.size() || rank.empty() || !std::has_single_bit(rank.size()))
    throw InputError("rank and multiplicity tables must both have 2^n entries");
  const auto n = static_cast<std::size_t>(std::countr_zero(rank.size()));
  check_size(n);
  auto o = std::make_shared<TableOracle>(std::move(rank), std::move(mult));
  return Rsm(std::move(o), iota(n), iota(n), std::move(meta));
}

SubsetMask Rsm::lift(SubsetMask local) const {
  SubsetMask out = 0;
  for (std::size_t i = 0; i < size(); ++i)
    if (contains(local, i)) out |= SubsetMask{1} << parent_[i];
  return out;
}

Rsm Rsm::restriction(SubsetMask a) const {
  a &= ground();
  std::vector<SubsetMask> bits;
  std::vector<std::size_t> labels, parent;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!contains(a, i)) continue;
    bits.push_back(SubsetMask{1} << i);
    labels.push_back(labels_[i]);
    parent.push_back(i);
  }
  RsmMeta meta = meta_;
  if (meta.provenance.group) {
    auto& els = meta.provenance.group->elements;
    std::vector<std::vector<long>> kept;
    for (std::size_t i : parent) kept.push_back(els[i]);
    els = std::move(kept);
  }
  auto o = std::make_shared<RestrictionOracle>(oracle_, std::move(bits));
  return Rsm(std::move(o), std::move(labels), std::move(parent), std::move(meta));
}

Rsm Rsm::contraction(SubsetMask a) const {
  a &= ground();
  std::vector<SubsetMask> bits;
  std::vector<std::size_t> labels, parent;
  for (std::size_t i = 0; i < size(); ++i) {
    if (contains(a, i)) continue;
    bits.push_back(SubsetMask{1} << i);
    labels.push_back(labels_[i]);
    parent.push_back(i);
  }
  auto o = std::make_shared<ContractionOracle>(oracle_, std::move(bits), a);
  RsmMeta meta;
  if (meta_.ambient_rank) meta.ambient_rank = *meta_.ambient_rank - rank(a);
  meta.provenance.source = SourceKind::derived;
  meta.provenance.multiplicity = meta_.provenance.multiplicity;
  meta.provenance.lie_group = meta_.provenance.lie_group;
  return Rsm(std::move(o), std::move(labels), std::move(parent), std::move(meta));
}

Rsm Rsm::dual() const {
  auto o = std::make_shared<DualOracle>(oracle_, size());
  RsmMeta meta;
  meta.provenance.source = SourceKind::derived;
  meta.provenance.multiplicity = MultiplicityKind::derived;
  return Rsm(std::move(o), labels_, iota(size()), std::move(meta));
}

Rsm Rsm::with_meta(RsmMeta meta) const { return Rsm(oracle_, labels_, parent_, std::move(meta)); }

std::vector<long> Rsm::rank_table() const {
  if (size() > kMaxMaterialize) throw PreconditionError("refusing to materialize more than 2^20 subsets");
  std::vector<long> out(std::size_t{1} << size());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = rank(static_cast<SubsetMask>(a));
  return out;
}

std::vector<Rational> Rsm::mult_table() const {
  if (size() > kMaxMaterialize) throw PreconditionError("refusing to materialize more than 2^20 subsets");
  std::vector<Rational> out(std::size_t{1} << size());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = mult(static_cast<SubsetMask>(a));
  return out;
}

Rsm Rsm::materialized() const {
  auto o = std::make_shared<TableOracle>(rank_table(), mult_table());
  return Rsm(std::move(o), labels_, parent_, meta_);
}

bool tables_equal(const Rsm& a, const Rsm& b) {
  if (a.size() != b.size()) return false;
  const std::uint64_t total = std::uint64_t{1} << a.size();
  for (std::uint64_t m = 0; m < total; ++m) {
    const auto s = static_cast<SubsetMask>(m);
    if (a.rank(s) != b.rank(s) || a.mult(s) != b.mult(s)) return false;
  }
  return true;
}

SubsetMask closure(const Rsm& m, SubsetMask a) {
  const long r = m.rank(a);
  SubsetMask out = a;
  for (std::size_t e = 0; e < m.size(); ++e)
    if (!contains(a, e) && m.rank(a | (SubsetMask{1} << e)) == r) out |= SubsetMask{1} << e;
  return out;
}

void require_matroid(const Rsm& m) {
  if (!check_matroid(m)) throw PreconditionError("rank function does not satisfy the matroid axioms");
}

std::vector<SubsetMask> flats(const Rsm& m) {
  require_matroid(m);
  std::vector<SubsetMask> out;
  const std::uint64_t total = std::uint64_t{1} << m.size();
  for (std::uint64_t a = 0; a < total; ++a)
    if (closure(m, static_cast<SubsetMask>(a)) == a) out.push_back(static_cast<SubsetMask>(a));
  return out;
}

namespace {

constexpr std::size_t kExhaustivePairs = 12;
constexpr std::size_t kSampledPairs = 100000;

// Rank lookups through a dense table when the ground set allows it.
struct RankView {
  explicit RankView(const Rsm& m) : m_(m) {
    if (m.size() <= kMaxMaterialize) table_ = m.rank_table();
  }
  long operator()(SubsetMask a) const { return table_.empty() ? m_.rank(a) : table_[a]; }

  const Rsm& m_;
  std::vector<long> table_;
};

}  // namespace

bool check_matroid(const Rsm& m) {
  const std::size_t n = m.size();
  const RankView r(m);
  std::mt19937_64 rng(0x5eed);
  const SubsetMask full = m.ground();
  auto random_mask = [&] { return static_cast<SubsetMask>(rng()) & full; };

  auto unit_checks = [&](SubsetMask a) {
    const long ra = r(a);
    if (ra < 0 || ra > popcount(a)) return false;
    for (std::size_t e = 0; e < n; ++e)
      if (!contains(a, e) && r(a | (SubsetMask{1} << e)) < ra) return false;
    return true;
  };
  if (n <= kMaxMaterialize) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a)
      if (!unit_checks(static_cast<SubsetMask>(a))) return false;
  } else {
    for (std::size_t k = 0; k < kSampledPairs; ++k)
      if (!unit_checks(random_mask())) return false;
  }

  auto submodular = [&](SubsetMask a, SubsetMask b) { return r(a | b) + r(a & b) <= r(a) + r(b); };
  if (n <= kExhaustivePairs) {
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < total; ++a)
      for (std::uint64_t b = a + 1; b < total; ++b)
        if (!submodular(static_cast<SubsetMask>(a), static_cast<SubsetMask>(b))) return false;
  } else {
    for (std::size_t k = 0; k < kSampledPairs; ++k)
      if (!submodular(random_mask(), random_mask())) return false;
  }
  return true;
}

namespace {

// Checks axioms (ii) and (iii) on [R, S] when it is a molecule.
bool molecule_ok(const Rsm& m, const RankView& r, SubsetMask R, SubsetMask S) {
  const SubsetMask diff = S & ~R;
  const long rr = r(R);
  SubsetMask F = 0;
  for (std::size_t e = 0; e < m.size(); ++e)
    if (contains(diff, e) && r(R | (SubsetMask{1} << e)) > rr) F |= SubsetMask{1} << e;
  const SubsetMask T = diff & ~F;
  // Every A in [R, S] must have r(A) = r(R) + |A & F|.
  for (SubsetMask sub = diff;; sub = (sub - 1) & diff) {
    if (r(R | sub) != rr + popcount(sub & F)) return true;  // not a molecule
    if (sub == 0) break;
  }
  if (m.mult(R) * m.mult(S) != m.mult(R | F) * m.mult(R | T)) return false;
  Rational rho(0);
  for (SubsetMask sub = diff;; sub = (sub - 1) & diff) {
    const Rational term = m.mult(R | sub);
    if ((popcount(diff) - popcount(sub)) % 2 == 0) {
      rho += term;
    } else {
      rho -= term;
    }
    if (sub == 0) break;
  }
  if (popcount(T) % 2 == 1) rho = -rho;
  return rho >= 0;
}

}  // namespace

bool check_arithmetic(const Rsm& m) {
  if (!check_matroid(m)) return false;
  const std::size_t n = m.size();
  const RankView r(m);
  const std::uint64_t total = std::uint64_t{1} << n;

  // Multiplicities must be positive integers.
  auto positive_int = [&](SubsetMask a) {
    const Rational v = m.mult(a);
    return is_integer(v) && v > 0;
  };
  // Axiom (i).
  auto divisibility = [&](SubsetMask a) {
    const Integer ma = m.mult(a).get_num();
    for (std::size_t e = 0; e < n; ++e) {
      if (contains(a, e)) continue;
      const SubsetMask ae = a | (SubsetMask{1} << e);
      const Integer mae = m.mult(ae).get_num();
      if (r(ae) == r(a)) {
        if (!mpz_divisible_p(ma.get_mpz_t(), mae.get_mpz_t())) return false;
      } else if (!mpz_divisible_p(mae.get_mpz_t(), ma.get_mpz_t())) {
        return false;
      }
    }
    return true;
  };

  std::mt19937_64 rng(0xa417);
  const SubsetMask full = m.ground();
  if (n <= kMaxMaterialize) {
    for (std::uint64_t a = 0; a < total; ++a)
      if (!positive_int(static_cast<SubsetMask>(a))) return false;
    for (std::uint64_t a = 0; a < total; ++a)
      if (!divisibility(static_cast<SubsetMask>(a))) return false;
  } else {
    for (std::size_t k = 0; k < kSampledPairs; ++k) {
      const SubsetMask a = static_cast<SubsetMask>(rng()) & full;
      if (!positive_int(a) || !divisibility(a)) return false;
    }
  }

  if (n <= kExhaustivePairs) {
    for (std::uint64_t s = 0; s < total; ++s) {
      const auto S = static_cast<SubsetMask>(s);
      for (SubsetMask R = S;; R = (R - 1) & S) {
        if (!molecule_ok(m, r, R, S)) return false;
        if (R == 0) break;
      }
    }
  } else {
    for (std::size_t k = 0; k < kSampledPairs; ++k) {
      const SubsetMask S = static_cast<SubsetMask>(rng()) & full;
      const SubsetMask R = static_cast<SubsetMask>(rng()) & S;
      if (!molecule_ok(m, r, R, S)) return false;
    }
  }
  return true;
}

bool is_free(const Rsm& m) {
  const std::uint64_t total = std::uint64_t{1} << m.size();
  for (std::uint64_t a = 0; a < total; ++a)
    if (m.rank(static_cast<SubsetMask>(a)) != popcount(static_cast<SubsetMask>(a))) return false;
  return true;
}

Poly subset_sum(const Rsm& m, const std::function<Poly(SubsetMask)>& weight, bool parallel) {
  const auto n = static_cast<unsigned>(m.size());
  const Poly zero;
  return parallel ? kernels::reduce_subsets_parallel(n, weight, zero) : kernels::reduce_subsets_serial(n, weight, zero);
}

std::string var_of(const Rsm& m, std::string_view family, std::size_t element) {
  return element_var(family, m.labels().at(element));
}

}  // namespace rsm
