#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rsm/groups.hpp"
#include "rsm/polynomial.hpp"
#include "rsm/rsm.hpp"

namespace rsm {

struct GraphSpec {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // loops and parallel edges allowed
};

struct VectorListSpec {
  std::size_t dimension = 0;
  std::vector<std::vector<long>> vectors;
};

struct MultiplicitySpec {
  MultiplicityKind kind = MultiplicityKind::trivial;
  LieGroupSpec lie_group;       // lie_group only
  std::vector<Rational> table;  // explicit_table only, indexed by mask
};

Rsm rsm_from_graph(const GraphSpec& g, const MultiplicitySpec& mult);
Rsm rsm_from_vectors(const VectorListSpec& v, const MultiplicitySpec& mult);
Rsm rsm_from_abelian(const AbelianGroupSpec& g, const MultiplicitySpec& mult);

/// Explicit rank and multiplicity tables with an optional r(Gamma).
Rsm rsm_from_explicit(std::vector<long> rank, std::vector<Rational> mult, std::optional<long> ambient_rank = std::nullopt);

/// Signed incidence vectors: edge (i, j) has +1 at j and -1 at i.
std::vector<std::vector<long>> incidence_vectors(const GraphSpec& g);

/// sum over phi in Hom(Gamma, F) of prod_e (1 + v_e [phi(e) = 0]), by
/// enumerating homomorphisms. Refuses when |Hom(Gamma, F)| > limit.
Poly potts_by_enumeration(const Rsm& m, const std::vector<long>& finite, std::size_t limit = 10000);

/// |Hom(Gamma / <elements of A>, F)| straight from the group.
Integer quotient_hom_count(const Rsm& m, SubsetMask a, const std::vector<long>& finite);

}  // namespace rsm
