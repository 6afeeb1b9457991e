#include <doctest.h>

#include <stdexcept>

#include "risqn/geometry.hpp"

using namespace risqn;

TEST_CASE("distance between grid points") {
  CHECK(distance({0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0));
  CHECK(distance({0, 0, 90}, {400, 0, 10}) == doctest::Approx(407.92156108742279).epsilon(1e-14));
  CHECK(distance({1, 2, 3}, {1, 2, 3}) == 0.0);
}

TEST_CASE("relayed path length adds both legs") {
  const Point3D qbs{0, 0, 90}, ris{200, 100, 60}, user{400, 0, 10};
  const LinkGeometry g = link_geometry(qbs, ris, user);
  CHECK(g.d_sr == doctest::Approx(225.6102834).epsilon(1e-9));
  CHECK(g.d_ri == doctest::Approx(229.1287847).epsilon(1e-9));
  CHECK(g.e2e() == doctest::Approx(454.73906820136155).epsilon(1e-12));

  NetworkLayout layout{qbs, {user}, ris};
  CHECK(e2e_distance(layout, 0) == doctest::Approx(g.e2e()));
  CHECK_THROWS_AS(e2e_distance(layout, 1), std::out_of_range);
}

TEST_CASE("triangle inequality for the relay detour") {
  const Point3D qbs{0, 0, 90};
  for (double x : {50.0, 150.0, 300.0, 450.0}) {
    const Point3D ris{x, 120, 50}, user{420, 30, 10};
    CHECK(link_geometry(qbs, ris, user).e2e() >= distance(qbs, user));
  }
}

TEST_CASE("deployment region is closed and clamps") {
  const DeploymentRegion r = default_region();
  CHECK(r.x_min == 50);
  CHECK(r.x_max == 450);
  CHECK(r.y_min == 0);
  CHECK(r.y_max == 400);
  CHECK(r.h_min == 35);
  CHECK(r.h_max == 90);
  CHECK(region_contains(r, {50, 0, 35}));
  CHECK(region_contains(r, {450, 400, 90}));
  CHECK_FALSE(region_contains(r, {49.999, 10, 40}));
  CHECK_FALSE(region_contains(r, {100, 10, 90.001}));
  const Point3D c = clamp_to_region(r, {-10, 500, 20});
  CHECK(c == Point3D{50, 400, 35});
  CHECK(region_contains(r, c));

  DeploymentRegion bad{10, 0, 0, 1, 0, 1};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("RIS keeps its distance from users") {
  const std::vector<Point3D> users{{100, 0, 10}, {300, 0, 10}};
  CHECK(ris_separation_ok({200, 0, 40}, users));
  CHECK_FALSE(ris_separation_ok({100, 0, 25}, users));
  CHECK(ris_separation_ok({100, 0, 30}, users));
  CHECK(ris_separation_ok({100, 0, 25}, users, 10.0));
}

TEST_CASE("layouts reject negative heights") {
  NetworkLayout layout{{0, 0, 90}, {{10, 10, -1}}, {50, 50, 50}};
  CHECK_THROWS_AS(layout.validate(), std::invalid_argument);
}
