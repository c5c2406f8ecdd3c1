#include "doctest.h"
#include "rsm/geometry.hpp"
#include "rsm/invariants.hpp"
#include "rsm/kernels.hpp"
#include "support.hpp"

using namespace rsm;

TEST_CASE("parallel subset reduction equals the serial reference") {
  for (unsigned n : {0u, 3u, 7u, 12u}) {
    auto w = [](std::uint32_t mask) -> Rational { return Rational(static_cast<long>(mask % 7)) / (1 + std::popcount(mask)); };
    CHECK(kernels::reduce_subsets_serial(n, w, Rational(0)) == kernels::reduce_subsets_parallel(n, w, Rational(0)));
  }
  testing::Gen gen(3);
  const Rsm m = gen.explicit_rsm(6);
  auto weight = [&](SubsetMask a) { return Poly::constant(m.mult(a)) * Poly::variable("q", -static_cast<int>(m.rank(a))); };
  CHECK(subset_sum(m, weight, true) == subset_sum(m, weight, false));
}

TEST_CASE("parallel box count equals the serial reference") {
  testing::Gen gen(8);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(gen.integer(1, 3));
    const Zonotope z{dim, gen.vector_list(dim, static_cast<std::size_t>(gen.integer(1, 3)), 2)};
    const long k = gen.integer(1, 3);
    CHECK(lattice_points_zonotope(z, k, true) == lattice_points_zonotope(z, k, false));
  }
  std::vector<long> lo{-3, -2}, hi{4, 5};
  auto pred = [](const std::vector<long>& x) { return (x[0] + 2 * x[1]) % 3 == 0; };
  CHECK(kernels::count_box_serial(lo, hi, pred) == kernels::count_box_parallel(lo, hi, pred));
  CHECK(kernels::count_box_serial(lo, hi, [](const std::vector<long>&) { return true; }) == 8 * 8);
}
