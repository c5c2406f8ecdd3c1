#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "rsm/groups.hpp"
#include "rsm/polynomial.hpp"
#include "rsm/rational.hpp"

namespace rsm {

using SubsetMask = std::uint32_t;
inline constexpr std::size_t kMaxGround = 30;
inline constexpr std::size_t kMaxMaterialize = 20;

inline int popcount(SubsetMask m) { return std::popcount(m); }
inline SubsetMask full_mask(std::size_t n) { return n == 0 ? 0 : (SubsetMask{0xFFFFFFFFu} >> (32 - n)); }
inline bool contains(SubsetMask m, std::size_t i) { return (m >> i) & 1u; }

enum class SourceKind { graph, vectors, abelian, explicit_table, derived };
enum class MultiplicityKind { trivial, arithmetic, lie_group, explicit_table, derived };

struct Provenance {
  SourceKind source = SourceKind::explicit_table;
  MultiplicityKind multiplicity = MultiplicityKind::explicit_table;
  // Elements listed in ground-set order; present for group representations.
  std::optional<AbelianGroupSpec> group;
  std::optional<LieGroupSpec> lie_group;
};

struct RsmMeta {
  std::optional<long> ambient_rank;  // r(Gamma)
  Provenance provenance;
};

class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual long rank(SubsetMask a) const = 0;
  virtual Rational mult(SubsetMask a) const = 0;
};

// A ranked set with multiplicity (E, r, m). Values are cheap to copy and share
// their oracle; every oracle is safe to query from several threads.
class Rsm {
 public:
  using RankFn = std::function<long(SubsetMask)>;
  using MultFn = std::function<Rational(SubsetMask)>;

  /// Memoizing oracle over the given functions.
  static Rsm from_functions(std::size_t n, RankFn rank, MultFn mult, RsmMeta meta = {});
  /// Dense tables indexed by mask; both must have 2^n entries.
  static Rsm from_tables(std::vector<long> rank, std::vector<Rational> mult, RsmMeta meta = {});

  std::size_t size() const { return labels_.size(); }
  SubsetMask ground() const { return full_mask(size()); }

  long rank(SubsetMask a) const { return oracle_->rank(a); }
  Rational mult(SubsetMask a) const { return oracle_->mult(a); }
  long full_rank() const { return rank(ground()); }

  // Root element index of each element; per-element variables use these.
  const std::vector<std::size_t>& labels() const { return labels_; }
  // Index of each element in the rsm this one was derived from.
  const std::vector<std::size_t>& parent_indices() const { return parent_; }
  const RsmMeta& meta() const { return meta_; }

  Rsm restriction(SubsetMask a) const;
  Rsm contraction(SubsetMask a) const;
  Rsm dual() const;
  Rsm with_meta(RsmMeta meta) const;

  /// Copy backed by dense tables. Only for size() <= kMaxMaterialize.
  Rsm materialized() const;
  std::vector<long> rank_table() const;
  std::vector<Rational> mult_table() const;

  /// Mask in this rsm -> mask in the parent ground set.
  SubsetMask lift(SubsetMask local) const;

 private:
  Rsm(std::shared_ptr<const Oracle> o, std::vector<std::size_t> labels, std::vector<std::size_t> parent, RsmMeta meta)
      : oracle_(std::move(o)), labels_(std::move(labels)), parent_(std::move(parent)), meta_(std::move(meta)) {}

  std::shared_ptr<const Oracle> oracle_;
  std::vector<std::size_t> labels_;
  std::vector<std::size_t> parent_;
  RsmMeta meta_;
};

/// Same ground size and equal rank/multiplicity tables.
bool tables_equal(const Rsm& a, const Rsm& b);

SubsetMask closure(const Rsm& m, SubsetMask a);
std::vector<SubsetMask> flats(const Rsm& m);

/// Throws PreconditionError when m is not a matroid.
void require_matroid(const Rsm& m);

bool check_matroid(const Rsm& m);
bool check_arithmetic(const Rsm& m);

/// True when r(A) = |A| for every A (coloops only).
bool is_free(const Rsm& m);

/// Sum over all A of weight(A), reduced in a fixed order.
Poly subset_sum(const Rsm& m, const std::function<Poly(SubsetMask)>& weight, bool parallel = true);

/// Variable names of an element: family + root label.
std::string var_of(const Rsm& m, std::string_view family, std::size_t element);

}  // namespace rsm
