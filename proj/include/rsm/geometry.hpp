#pragma once

#include <cstdint>
#include <vector>

#include "rsm/groups.hpp"
#include "rsm/polynomial.hpp"
#include "rsm/rsm.hpp"

namespace rsm {

// Z(E) = { sum lambda_e e : 0 <= lambda_e <= 1 } in R^n.
struct Zonotope {
  std::size_t dimension = 0;
  std::vector<std::vector<long>> generators;
};

// Oracle scale for the Fourier-Motzkin count.
inline constexpr std::size_t kZonotopeMaxDim = 3;
inline constexpr std::size_t kZonotopeMaxGenerators = 4;
inline constexpr long kZonotopeMaxDilation = 3;

/// |kZ(E) cap Z^n|: project {x = sum lambda_e k e, 0 <= lambda <= 1} onto x by
/// Fourier-Motzkin, then count the bounding box. Refuses beyond oracle scale.
std::uint64_t lattice_points_zonotope(const Zonotope& z, long k, bool parallel = true);

/// Integer points of the half-open zonotope sum [0, 1) k_e e for independent
/// generators, each point tested by solving for its unique lambda.
std::uint64_t lattice_points_half_open(const Zonotope& z, const std::vector<long>& k, bool parallel = true);
std::uint64_t lattice_points_half_open(const Rsm& m, const std::vector<long>& k, bool parallel = true);

/// Generators of an rsm built from vectors (or a torsion-free abelian list).
Zonotope zonotope_of(const Rsm& m);

/// k^{r(E)} T(1 + 1/k, 1); at k = 0 the multivariate form gives 1.
Rational ehrhart_closed(const Rsm& m, const Rational& k);

/// m^G(A) |F|^{r(Gamma) - r(A)}.
Integer layer_count(const Rsm& m, SubsetMask a);

struct FlatIdentityRow {
  SubsetMask flat = 0;
  Poly lhs;  // sum over flats X containing the flat of chi_{M/X}(t)
  Poly rhs;  // t^{l - r(flat)}
  bool holds = false;
};

/// One row per flat; chi uses the ambient dimension l of the vectors.
std::vector<FlatIdentityRow> arrangement_flat_identities(const Rsm& m);

/// (-1)^{(a+b) r(Gamma)} chi((-1)^{a+b} psi_G), psi_G the Euler characteristic.
Rational euler_region_value(const Rsm& m, const LieGroupSpec& g);

}  // namespace rsm
