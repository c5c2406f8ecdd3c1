#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rsm/constructors.hpp"
#include "rsm/int_matrix.hpp"
#include "rsm/rsm.hpp"

namespace rsm::testing {

inline Rsm graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges,
                 MultiplicityKind kind = MultiplicityKind::trivial) {
  MultiplicitySpec m;
  m.kind = kind;
  return rsm_from_graph(GraphSpec{vertices, std::move(edges)}, m);
}

inline Rsm k3() { return graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline Rsm vectors(std::size_t dim, std::vector<std::vector<long>> vs, MultiplicityKind kind = MultiplicityKind::arithmetic) {
  MultiplicitySpec m;
  m.kind = kind;
  return rsm_from_vectors(VectorListSpec{dim, std::move(vs)}, m);
}

inline Rsm lie(std::size_t dim, std::vector<std::vector<long>> vs, LieGroupSpec g) {
  MultiplicitySpec m;
  m.kind = MultiplicityKind::lie_group;
  m.lie_group = std::move(g);
  return rsm_from_vectors(VectorListSpec{dim, std::move(vs)}, m);
}

// Uniform matroid U_{k,n}, trivial multiplicity.
inline Rsm uniform_matroid(long k, std::size_t n, std::optional<long> ambient = std::nullopt) {
  std::vector<long> rank(std::size_t{1} << n);
  for (SubsetMask a = 0; a < rank.size(); ++a) rank[a] = std::min<long>(popcount(a), k);
  return rsm_from_explicit(rank, std::vector<Rational>(rank.size(), Rational(1)), ambient);
}

// Hand-rolled generators.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  Rational rational(long bound = 9) {
    long num = 0;
    while (num == 0) num = integer(-bound, bound);
    return make_rational(num, integer(1, bound));
  }

  IntMatrix matrix(std::size_t rows, std::size_t cols, long bound) {
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer(-bound, bound);
    return m;
  }

  std::vector<std::vector<long>> vector_list(std::size_t dim, std::size_t count, long bound) {
    std::vector<std::vector<long>> out(count, std::vector<long>(dim));
    for (auto& v : out)
      for (auto& x : v) x = integer(-bound, bound);
    return out;
  }

  // A ranked set with arbitrary rank and multiplicity tables.
  Rsm explicit_rsm(std::size_t n, bool with_ambient = true) {
    std::vector<long> rank(std::size_t{1} << n);
    std::vector<Rational> mult(rank.size());
    for (std::size_t a = 0; a < rank.size(); ++a) {
      rank[a] = integer(0, static_cast<long>(n));
      mult[a] = rational();
    }
    std::optional<long> ambient;
    if (with_ambient) ambient = integer(static_cast<long>(n), static_cast<long>(n) + 2);
    return rsm_from_explicit(rank, mult, ambient);
  }

  std::vector<Rational> probabilities(std::size_t n) {
    std::vector<Rational> p(n);
    for (auto& x : p) x = make_rational(integer(0, 12), 12);
    return p;
  }
};

}  // namespace rsm::testing
