#pragma once

#include <cstddef>
#include <vector>

#include "rsm/int_matrix.hpp"
#include "rsm/rational.hpp"

namespace rsm {

// Gamma = Z^s + Z/d_1 + ... + Z/d_n with a list of elements. Each element has
// s free coordinates followed by n torsion coordinates, the latter reduced
// mod d_i.
struct AbelianGroupSpec {
  std::size_t free_rank = 0;
  std::vector<long> torsion;
  std::vector<std::vector<long>> elements;

  std::size_t width() const { return free_rank + torsion.size(); }
};

// G = (S^1)^a x R^b x F, F given by its invariant factors.
struct LieGroupSpec {
  unsigned a = 0;
  unsigned b = 0;
  std::vector<long> finite;

  bool is_finite() const { return a == 0 && b == 0; }
};

struct QuotientStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1

  Integer torsion_order() const;
};

/// Validates the group and reduces torsion coordinates; InputError on bad
/// moduli or coordinate counts.
AbelianGroupSpec normalized(AbelianGroupSpec g);

/// Structure of Gamma / <elements>.
QuotientStructure quotient_structure(const AbelianGroupSpec& g, const std::vector<std::vector<long>>& elements);

/// Quotient by the elements of g selected by indices.
QuotientStructure quotient_structure(const AbelianGroupSpec& g, const std::vector<std::size_t>& indices);

Integer group_order(const std::vector<long>& factors);

/// |Hom(H, F)| for finite groups given by factor lists.
Integer hom_count(const std::vector<Integer>& h, const std::vector<long>& f);
Integer hom_count(const std::vector<long>& h, const std::vector<long>& f);

/// |Hom(T, G)| for T the finite group with the given torsion factors:
/// each factor e contributes |F[e]| * e^a.
Integer g_multiplicity(const std::vector<Integer>& torsion, const LieGroupSpec& g);

/// Euler characteristic of G: |F| when a == 0, else 0.
Integer euler_char(const LieGroupSpec& g);

}  // namespace rsm
