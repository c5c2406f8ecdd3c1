#include "doctest.h"
#include "rsm/geometry.hpp"
#include "rsm/invariants.hpp"
#include "support.hpp"

using namespace rsm;

TEST_CASE("closed zonotope counts") {
  CHECK(lattice_points_zonotope(Zonotope{1, {{2}}}, 3) == 7);
  CHECK(lattice_points_zonotope(Zonotope{2, {{1, 0}, {0, 1}}}, 1) == 4);
  CHECK(lattice_points_zonotope(Zonotope{1, {{2}}}, 1) == 3);
  // Hexagon spanned by (1,0), (0,1), (1,1): 7 lattice points.
  const Rsm hex = testing::vectors(2, {{1, 0}, {0, 1}, {1, 1}});
  CHECK(lattice_points_zonotope(zonotope_of(hex), 1) == 7);
  CHECK(ehrhart_closed(hex, Rational(1)) == 7);
  CHECK(ehrhart_closed(testing::vectors(2, {{1, 0}, {0, 1}}), Rational(1)) == 4);
  CHECK(lattice_points_zonotope(Zonotope{2, {}}, 2) == 1);
  CHECK_THROWS_AS(lattice_points_zonotope(Zonotope{4, {}}, 1), PreconditionError);
  CHECK_THROWS_AS(lattice_points_zonotope(Zonotope{2, {{1}}}, 1), InputError);
}

TEST_CASE("half-open zonotope counts") {
  CHECK(lattice_points_half_open(Zonotope{1, {{2}}}, {3}) == 6);
  CHECK(lattice_points_half_open(Zonotope{2, {{1, 0}, {0, 1}}}, {1, 1}) == 1);
  const Rsm d = testing::vectors(2, {{2, 0}, {0, 3}});
  CHECK(lattice_points_half_open(d, {1, 1}) == 6);
  CHECK(d.mult(d.ground()) == 6);
  CHECK_THROWS_AS(lattice_points_half_open(Zonotope{1, {{1}, {2}}}, {1, 1}), PreconditionError);
}

TEST_CASE("layer counts") {
  const Rsm real = testing::lie(1, {{2}}, LieGroupSpec{0, 1, {}});
  CHECK(layer_count(real, 1) == 1);
  CHECK(layer_count(real, 0) == 1);
  const Rsm circle = testing::lie(1, {{2}}, LieGroupSpec{1, 0, {}});
  CHECK(layer_count(circle, 1) == 2);
  const Rsm f = testing::lie(2, {{2, 0}, {1, 1}}, LieGroupSpec{0, 0, {2}});
  CHECK(layer_count(f, 0) == 4);
  CHECK(layer_count(f, 1) == 2 * 2);
  CHECK_THROWS_AS(layer_count(testing::k3(), 0), MissingMetadataError);
}

TEST_CASE("flat identities of arrangements") {
  const Rsm boolean = testing::vectors(2, {{1, 0}, {0, 1}}, MultiplicityKind::trivial);
  const auto rows = arrangement_flat_identities(boolean);
  CHECK(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.holds);
  CHECK(rows.front().flat == 0);
  CHECK(rows.front().lhs == Poly::variable("t", 2));

  for (const auto& r : arrangement_flat_identities(testing::k3())) CHECK(r.holds);
  const Rsm loops = testing::vectors(2, {{0, 0}, {0, 0}}, MultiplicityKind::trivial);
  const auto lr = arrangement_flat_identities(loops);
  REQUIRE(lr.size() == 1);
  CHECK(lr[0].lhs == Poly::variable("t", 2));
}

TEST_CASE("region counts") {
  const Rsm boolean = testing::vectors(2, {{1, 0}, {0, 1}}, MultiplicityKind::trivial);
  CHECK(euler_region_value(boolean, LieGroupSpec{0, 1, {}}) == 4);
  CHECK(euler_region_value(testing::k3(), LieGroupSpec{0, 1, {}}) == 6);
  // Two circles on the torus: the complement is an open square.
  CHECK(euler_region_value(boolean, LieGroupSpec{1, 0, {}}) == 1);
}
