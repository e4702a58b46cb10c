#include <doctest.h>

#include "forge/ambient.hpp"
#include "oracles.hpp"

using namespace forge;

TEST_CASE("new ambient") {
  CHECK_THROWS_AS(AmbientSpace(0, 1), Error);
  AmbientSpace one(1, 5);
  one.grow_generic(12);
  for (PointId x = 0; x < one.size(); ++x)
    for (PointId y = 0; y < x; ++y) CHECK(one.distance(x, y) == 1);

  AmbientSpace a(3, 7), b(3, 7);
  a.grow_generic(40);
  b.grow_generic(40);
  CHECK(a.snapshot() == b.snapshot());
  CHECK(a.digest() == b.digest());

  AmbientSpace two(2, 1);
  two.grow_generic(10);
  auto s = two.snapshot();
  CHECK(s.size() >= 10);
  CHECK(validate_metric(s).ok());
  CHECK(oracle::rational_metric(s));
}

TEST_CASE("realize") {
  AmbientSpace amb(3, 2);
  auto any = amb.realize(KatetovMap());
  CHECK(any < amb.size());

  RealizeOptions fresh;
  fresh.fresh_only = true;
  auto before = amb.size();
  auto y = amb.realize(KatetovMap({0}, {Rational(3)}), fresh);
  CHECK(y == before);
  CHECK(amb.distance(0, y) == 3);

  amb.grow_generic(15);
  auto f = KatetovMap({0, y}, {Rational(2), Rational(1)});
  auto first = amb.realize(f);
  RealizeOptions avoid;
  avoid.avoid = {first};
  auto second = amb.realize(f, avoid);
  CHECK(first != second);
  CHECK(amb.realizes(first, f));
  CHECK(amb.realizes(second, f));
  int d = amb.distance(first, second);
  CHECK(d >= 1);
  CHECK(d <= 2 * f.int_min());
  CHECK(validate_metric(amb.snapshot()).ok());

  CHECK_THROWS_AS(amb.realize(KatetovMap({0}, {Rational(4)})), Error);
  CHECK_THROWS_AS(amb.realize(KatetovMap({0, y}, {Rational(1), Rational(1)})), Error);
}

TEST_CASE("orbit prefixes") {
  AmbientSpace amb(2, 4);
  amb.grow_generic(6);
  auto f = KatetovMap({0, 1}, {Rational(1), Rational(amb.distance(0, 1) == 2 ? 1 : 2)});
  CHECK(amb.orbit_prefix(f, kRootCopy, 0).empty());
  auto orbit = amb.orbit_prefix(f, kRootCopy, 3);
  REQUIRE(orbit.size() == 3);
  for (auto y : orbit) CHECK(amb.realizes(y, f));
  auto s = amb.snapshot(orbit);
  CHECK(validate_metric(s).ok());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) CHECK((s.at(i, j) >= 1 && s.at(i, j) <= 2));
}

TEST_CASE("orbit_isometry_type") {
  CHECK(orbit_isometry_type(KatetovMap({0}, {Rational(1)}), 3) == 2);
  CHECK(orbit_isometry_type(KatetovMap({0}, {Rational(2)}), 3) == 3);
  for (int p = 1; p <= 5; ++p) CHECK(orbit_isometry_type(KatetovMap({0}, {Rational(p)}), p) == p);
}

TEST_CASE("extension audits") {
  AmbientSpace amb(3, 9);
  amb.grow_generic(10);
  auto k1 = audit_extension_property(amb, kRootCopy, 1, 10, 3);
  CHECK(k1.ok());
  auto before = amb.size();
  auto r = audit_extension_property(amb, kRootCopy, 2, 10, 3);
  CHECK(r.ok());
  CHECK(r.demands == r.met_existing + r.met_by_growth);
  CHECK(amb.size() <= before + r.demands);

  AmbientSpace one(1, 0);
  one.grow_generic(5);
  CHECK(audit_extension_property(one, kRootCopy, 2, 5, 1).ok());
}

TEST_CASE("orbit audit in the reduced range") {
  AmbientSpace amb(4, 12);
  amb.grow_generic(4);
  auto f = KatetovMap({0}, {Rational(1)});
  auto r = audit_orbit(amb, f, kRootCopy, 2, 12, orbit_isometry_type(f, 4));
  CHECK(r.ok());
}

TEST_CASE("static audit finds gaps without growing") {
  auto s = oracle::to_space({{0, 1}, {1, 0}}, 2);
  std::vector<PointId> pts{0, 1};
  auto r = audit_static(s, pts, pts, 1, 2, 2);
  CHECK_FALSE(r.ok());
  CHECK(r.unmet.size() < r.demands);
}

TEST_CASE("copies") {
  AmbientSpace amb(3, 1);
  amb.grow_generic(6);
  auto c = amb.new_copy(kRootCopy, {0, 1}, {2}, {}, {}, "child");
  CHECK(amb.is_member(c, 0));
  CHECK_FALSE(amb.is_member(c, 2));
  CHECK_FALSE(amb.eligible(c, 2));
  CHECK(amb.is_subcopy(c, kRootCopy));
  CHECK_FALSE(amb.is_subcopy(kRootCopy, c));
  RealizeOptions in_c;
  in_c.within = c;
  auto y = amb.realize(KatetovMap({0}, {Rational(2)}), in_c);
  CHECK(amb.is_member(c, y));
  CHECK(amb.is_member(kRootCopy, y));
  CHECK_THROWS_AS(amb.new_copy(kRootCopy, {2}, {2}, {}, {}, "bad"), Error);
}

TEST_CASE("ambient from a seed space") {
  auto s = oracle::to_space({{0, 2, 1}, {2, 0, 1}, {1, 1, 0}}, 2);
  auto amb = AmbientSpace::from_space(s, 0);
  CHECK(amb.size() == 3);
  CHECK(amb.distance(0, 1) == 2);
  CHECK(amb.distance(1, 2) == 1);
}
