#include "rsm/constructors.hpp"

#include <map>
#include <string>

namespace rsm {

namespace {

std::vector<std::size_t> members(SubsetMask a, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (contains(a, i)) out.push_back(i);
  return out;
}

void check_table(const MultiplicitySpec& mult, std::size_t n) {
  if (mult.kind == MultiplicityKind::explicit_table && mult.table.size() != (std::size_t{1} << n))
    throw InputError("explicit multiplicity table has " + std::to_string(mult.table.size()) + " entries, expected " +
                     std::to_string(std::size_t{1} << n));
  if (mult.kind == MultiplicityKind::derived) throw InputError("unsupported multiplicity kind");
  if (mult.kind == MultiplicityKind::lie_group)
    for (long f : mult.lie_group.finite)
      if (f < 2) throw InputError("finite group factors must be > 1");
}

// Rank from the group; multiplicity from the quotient or a table.
Rsm rsm_from_group(AbelianGroupSpec g, const MultiplicitySpec& mult, SourceKind source, long ambient, bool rational_ranks) {
  g = normalized(std::move(g));
  const std::size_t n = g.elements.size();
  if (n > kMaxGround) throw InputError("too many elements: " + std::to_string(n));
  check_table(mult, n);

  auto group = std::make_shared<const AbelianGroupSpec>(g);
  Rsm::RankFn rank;
  if (rational_ranks) {
    rank = [group, n](SubsetMask a) {
      const auto idx = members(a, n);
      IntMatrix mat(group->width(), idx.size());
      for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < group->width(); ++i) mat(i, j) = group->elements[idx[j]][i];
      return static_cast<long>(rational_rank(mat));
    };
  } else {
    rank = [group, n](SubsetMask a) {
      const auto q = quotient_structure(*group, members(a, n));
      return static_cast<long>(group->free_rank) - static_cast<long>(q.free_rank);
    };
  }

  Rsm::MultFn m;
  switch (mult.kind) {
    case MultiplicityKind::trivial:
      m = [](SubsetMask) { return Rational(1); };
      break;
    case MultiplicityKind::arithmetic:
      m = [group, n](SubsetMask a) { return Rational(quotient_structure(*group, members(a, n)).torsion_order()); };
      break;
    case MultiplicityKind::lie_group: {
      const LieGroupSpec lie = mult.lie_group;
      m = [group, n, lie](SubsetMask a) {
        return Rational(g_multiplicity(quotient_structure(*group, members(a, n)).torsion, lie));
      };
      break;
    }
    case MultiplicityKind::explicit_table: {
      auto table = std::make_shared<const std::vector<Rational>>(mult.table);
      m = [table](SubsetMask a) { return (*table)[a]; };
      break;
    }
    case MultiplicityKind::derived:
      throw InputError("unsupported multiplicity kind");
  }

  RsmMeta meta;
  meta.ambient_rank = ambient;
  meta.provenance.source = source;
  meta.provenance.multiplicity = mult.kind;
  meta.provenance.group = std::move(g);
  if (mult.kind == MultiplicityKind::lie_group) meta.provenance.lie_group = mult.lie_group;
  return Rsm::from_functions(n, std::move(rank), std::move(m), std::move(meta));
}

}  // namespace

std::vector<std::vector<long>> incidence_vectors(const GraphSpec& g) {
  std::vector<std::vector<long>> out;
  for (const auto& [i, j] : g.edges) {
    if (i >= g.vertices || j >= g.vertices)
      throw InputError("edge (" + std::to_string(i) + "," + std::to_string(j) + ") has an endpoint out of range");
    std::vector<long> v(g.vertices, 0);
    if (i != j) {
      v[j] = 1;
      v[i] = -1;
    }
    out.push_back(std::move(v));
  }
  return out;
}

Rsm rsm_from_graph(const GraphSpec& g, const MultiplicitySpec& mult) {
  AbelianGroupSpec grp{g.vertices, {}, incidence_vectors(g)};
  return rsm_from_group(std::move(grp), mult, SourceKind::graph, static_cast<long>(g.vertices), true);
}

Rsm rsm_from_vectors(const VectorListSpec& v, const MultiplicitySpec& mult) {
  for (std::size_t k = 0; k < v.vectors.size(); ++k)
    if (v.vectors[k].size() != v.dimension)
      throw InputError("vector " + std::to_string(k) + " has length " + std::to_string(v.vectors[k].size()) +
                       ", expected " + std::to_string(v.dimension));
  AbelianGroupSpec grp{v.dimension, {}, v.vectors};
  return rsm_from_group(std::move(grp), mult, SourceKind::vectors, static_cast<long>(v.dimension), true);
}

Rsm rsm_from_abelian(const AbelianGroupSpec& g, const MultiplicitySpec& mult) {
  return rsm_from_group(g, mult, SourceKind::abelian, static_cast<long>(g.free_rank), false);
}

Rsm rsm_from_explicit(std::vector<long> rank, std::vector<Rational> mult, std::optional<long> ambient_rank) {
  RsmMeta meta;
  meta.ambient_rank = ambient_rank;
  meta.provenance.source = SourceKind::explicit_table;
  meta.provenance.multiplicity = MultiplicityKind::explicit_table;
  return Rsm::from_tables(std::move(rank), std::move(mult), std::move(meta));
}

namespace {

const AbelianGroupSpec& group_of(const Rsm& m) {
  if (!m.meta().provenance.group) throw MissingMetadataError("rsm has no group representation");
  return *m.meta().provenance.group;
}

// Elements x of F (as coordinate tuples) with d * x = 0; d == 0 means all of F.
std::vector<std::vector<long>> kernel_elements(const std::vector<long>& f, long d) {
  std::vector<std::vector<long>> out{{}};
  for (long fj : f) {
    std::vector<std::vector<long>> next;
    for (const auto& prefix : out) {
      for (long x = 0; x < fj; ++x) {
        if (d != 0 && (d * x) % fj != 0) continue;
        auto ext = prefix;
        ext.push_back(x);
        next.push_back(std::move(ext));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Poly potts_by_enumeration(const Rsm& m, const std::vector<long>& finite, std::size_t limit) {
  const AbelianGroupSpec& g = group_of(m);
  const std::size_t gens = g.width();
  std::vector<std::vector<std::vector<long>>> images(gens);
  std::size_t count = 1;
  for (std::size_t k = 0; k < gens; ++k) {
    const long d = k < g.free_rank ? 0 : g.torsion[k - g.free_rank];
    images[k] = kernel_elements(finite, d);
    count *= images[k].size();
    if (count > limit) throw PreconditionError("Hom(Gamma, F) too large to enumerate");
  }

  // Tally the zero set of every homomorphism.
  std::map<SubsetMask, long> zero_sets;
  std::vector<std::size_t> choice(gens, 0);
  for (std::size_t iter = 0; iter < count; ++iter) {
    SubsetMask zeros = 0;
    for (std::size_t e = 0; e < m.size(); ++e) {
      bool is_zero = true;
      for (std::size_t j = 0; j < finite.size() && is_zero; ++j) {
        long acc = 0;
        for (std::size_t k = 0; k < gens; ++k) acc += g.elements[e][k] * images[k][choice[k]][j];
        if (((acc % finite[j]) + finite[j]) % finite[j] != 0) is_zero = false;
      }
      if (is_zero) zeros |= SubsetMask{1} << e;
    }
    ++zero_sets[zeros];
    for (std::size_t k = 0; k < gens; ++k) {
      if (++choice[k] < images[k].size()) break;
      choice[k] = 0;
    }
  }

  Poly out;
  for (const auto& [zeros, mult] : zero_sets) {
    Poly term = Poly::constant(Rational(mult));
    for (std::size_t e = 0; e < m.size(); ++e)
      if (contains(zeros, e)) term *= Poly::variable(var_of(m, "v", e)) + Rational(1);
    out += term;
  }
  return out;
}

Integer quotient_hom_count(const Rsm& m, SubsetMask a, const std::vector<long>& finite) {
  const AbelianGroupSpec& g = group_of(m);
  const auto q = quotient_structure(g, members(a, m.size()));
  Integer out = hom_count(q.torsion, finite);
  Integer base = group_order(finite), p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), q.free_rank);
  return out * p;
}

}  // namespace rsm
