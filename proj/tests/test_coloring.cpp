#include <doctest.h>

#include "forge/ambient.hpp"
#include "forge/coloring.hpp"

using namespace forge;

TEST_CASE("constant colouring") {
  auto c = ColoringOracle::constant("red");
  CHECK(c.color_count() == 1);
  CHECK(c.determined_by_base());
  CHECK(admissible_colors(c, KatetovMap()) == std::vector<ColorId>{0});
  CHECK(c.find("red") == 0);
  CHECK_THROWS_AS(c.find("blue"), Error);
}

TEST_CASE("base-determined table") {
  auto c = ColoringOracle::base_determined({0}, {{{1}, "odd"}, {{3}, "odd"}}, "even");
  CHECK(c.color_count() == 2);
  auto odd = c.find("odd"), even = c.find("even");
  std::vector<int> one{1}, two{2};
  CHECK(c.color_for(one, 7) == odd);
  CHECK(c.color_for(two, 7) == even);
  CHECK(admissible_colors(c, KatetovMap({0, 4}, {Rational(3), Rational(1)})) == std::vector<ColorId>{odd});
  CHECK_THROWS_AS(admissible_colors(c, KatetovMap({4}, {Rational(1)})), Error);
  std::vector<int> wrong{1, 1};
  CHECK_THROWS_AS(c.color_for(wrong, 0), Error);
  CHECK_THROWS_AS(ColoringOracle::base_determined({0}, {{{1, 2}, "a"}}, "b"), Error);
}

TEST_CASE("nearest base point") {
  auto c = ColoringOracle::nearest_base({0, 1}, {"left", "right"});
  std::vector<int> near_left{1, 2}, near_right{3, 1}, tie{2, 2};
  CHECK(c.name(c.color_for(near_left, 9)) == "left");
  CHECK(c.name(c.color_for(near_right, 9)) == "right");
  CHECK(c.name(c.color_for(tie, 9)) == "left");
  CHECK_THROWS_AS(ColoringOracle::nearest_base({0, 1}, {"only"}), Error);
}

TEST_CASE("hash-random colouring") {
  auto a = ColoringOracle::hash_random(4, {"a", "b", "c"});
  auto b = ColoringOracle::hash_random(4, {"a", "b", "c"});
  CHECK_FALSE(a.determined_by_base());
  std::vector<std::size_t> seen(3, 0);
  for (PointId x = 0; x < 3000; ++x) {
    CHECK(a.color_for({}, x) == b.color_for({}, x));
    ++seen[a.color_for({}, x)];
  }
  for (auto n : seen) CHECK(n > 800);
  CHECK(admissible_colors(a, KatetovMap({0}, {Rational(1)})).size() == 3);
  CHECK_THROWS_AS(ColoringOracle::hash_random(1, {}), Error);
}

TEST_CASE("colours inside an ambient follow the base distances") {
  AmbientSpace amb(4, 2);
  amb.grow_generic(30);
  auto c = ColoringOracle::base_determined({0}, {{{2}, "two"}}, "other");
  amb.set_coloring(c);
  for (PointId x = 1; x < amb.size(); ++x)
    CHECK(c.name(amb.color(x)) == (amb.distance(0, x) == 2 ? "two" : "other"));
}

TEST_CASE("colour sets") {
  CHECK(complement({0, 2}, 4) == ColorSet{1, 3});
  CHECK(complement({}, 2) == ColorSet{0, 1});
  CHECK(contains({1, 3}, 3));
  CHECK_FALSE(contains({1, 3}, 2));
}
