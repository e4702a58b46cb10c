#include <doctest.h>

#include "forge/katetov.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

KatetovMap map_of(std::vector<int> const& vals) {
  KatetovMap f;
  for (std::size_t i = 0; i < vals.size(); ++i) f = f.with(static_cast<PointId>(i), Rational(vals[i]));
  return f;
}

}  // namespace

TEST_CASE("is_katetov examples") {
  auto s2 = oracle::to_space({{0, 2}, {2, 0}}, 3);
  CHECK(is_katetov(map_of({1, 3}), s2));
  CHECK_FALSE(is_katetov(map_of({1, 4}), oracle::to_space({{0, 2}, {2, 0}}, 4)));
  for (int k = 1; k <= 4; ++k) CHECK(is_katetov(map_of({k}), oracle::to_space({{0}}, 4)));
  CHECK_THROWS_AS(is_katetov(map_of({1, 4}), s2), Error);
  CHECK_THROWS_AS(is_katetov(KatetovMap({9}, {Rational(1)}), s2), Error);
}

TEST_CASE("is_katetov agrees with the one-point extension being metric") {
  std::size_t mismatches = 0, cases = 0;
  for (int p = 1; p <= 4; ++p)
    for (std::size_t n = 1; n <= 3; ++n)
      for (auto const& d : oracle::all_spaces(n, p)) {
        auto space = oracle::to_space(d, p);
        oracle::tuples(n, p, [&](std::vector<int> const& v) {
          bool brute = oracle::one_point_ok(d, v);
          mismatches += is_katetov(map_of(v), space) != brute;
          ++cases;
        });
      }
  CHECK(cases > 0);
  CHECK(mismatches == 0);
}

TEST_CASE("enumeration examples") {
  std::vector<PointId> one{0};
  CHECK(enumerate_katetov(oracle::to_space({{0}}, 3), one).size() == 3);
  // frozen: brute force over {1,2}^2 and {1,2,3}^2
  std::vector<PointId> two{0, 1};
  auto d1 = oracle::Matrix{{0, 1}, {1, 0}};
  auto d3 = oracle::Matrix{{0, 3}, {3, 0}};
  CHECK(oracle::count_extensions(d1, 2) == 4);
  CHECK(oracle::count_extensions(d3, 3) == 8);
  CHECK(enumerate_katetov(oracle::to_space(d1, 2), two).size() == 4);
  CHECK(enumerate_katetov(oracle::to_space(d3, 3), two).size() == 8);
}

TEST_CASE("enumeration counts match brute force up to 4 points, p <= 4") {
  for (int p = 1; p <= 4; ++p)
    for (std::size_t n = 1; n <= 4; ++n)
      for (auto const& d : oracle::all_spaces(n, p)) {
        auto space = oracle::to_space(d, p);
        auto const& pts = space.points();
        REQUIRE(count_katetov(space, pts) == oracle::count_extensions(d, p));
      }
}

TEST_CASE("enumeration order is lexicographic and maps are distinct") {
  auto space = oracle::to_space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, 3);
  auto maps = enumerate_katetov(space, space.points());
  for (std::size_t i = 1; i < maps.size(); ++i) CHECK(maps[i - 1].values < maps[i].values);
}

TEST_CASE("fixed restriction filters exactly") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    int p = 2 + static_cast<int>(rng() % 3);
    std::size_t n = 2 + rng() % 3;
    auto space = oracle::to_space(oracle::random_space(n, p, rng), p);
    auto all = enumerate_katetov(space, space.points());
    REQUIRE_FALSE(all.empty());
    auto pick = all[rng() % all.size()];
    std::vector<PointId> F{0};
    if (n > 2) F.push_back(2);
    EnumerationConstraint c;
    c.fixed = restrict(pick, F);
    auto filtered = enumerate_katetov(space, space.points(), c);
    std::vector<KatetovMap> expect;
    for (auto const& g : all)
      if (restrict(g, F) == *c.fixed) expect.push_back(g);
    CHECK(filtered == expect);
  }
}

TEST_CASE("min value, upper bounds and limit") {
  auto space = oracle::to_space({{0, 1}, {1, 0}}, 3);
  EnumerationConstraint c;
  c.min_value = Rational(2);
  for (auto const& g : enumerate_katetov(space, space.points(), c)) CHECK(g.int_min() >= 2);
  EnumerationConstraint u;
  u.upper_bounds.emplace_back(1, Rational(1));
  for (auto const& g : enumerate_katetov(space, space.points(), u)) CHECK(g.int_at(1) == 1);
  EnumerationConstraint lim;
  lim.limit = 2;
  CHECK(enumerate_katetov(space, space.points(), lim).size() == 2);
}

TEST_CASE("extend_space_by_map and restrict") {
  auto x = oracle::to_space({{0}}, 2);
  auto two = extend_space_by_map(x, KatetovMap({0}, {Rational(2)}), 5);
  CHECK(two.size() == 2);
  CHECK(two.distance(0, 5) == 2);
  std::vector<PointId> back{0};
  CHECK(two.induced(back) == x);

  auto xy = oracle::to_space({{0, 1}, {1, 0}}, 2);
  auto ext = extend_space_by_map(xy, map_of({1, 1}), 9);
  CHECK(validate_metric(ext).ok());
  CHECK(oracle::one_point_ok({{0, 1}, {1, 0}}, {1, 1}));
  CHECK_THROWS_AS(extend_space_by_map(xy, KatetovMap({0, 1}, {Rational(1), Rational(4)}), 9), Error);

  auto f = map_of({1, 3});
  CHECK(restrict(f, f.domain) == f);
  CHECK(restrict(f, {}).empty());
  std::vector<PointId> y{1};
  CHECK(restrict(f, y) == KatetovMap({1}, {Rational(3)}));
  std::vector<PointId> missing{4};
  CHECK_THROWS_AS(restrict(f, missing), Error);
}
