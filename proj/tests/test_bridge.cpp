#include <doctest.h>

#include "forge/bridge.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

FiniteMetricSpace unit_space(std::vector<std::vector<Rational>> m) {
  std::vector<PointId> ids;
  for (std::size_t i = 0; i < m.size(); ++i) ids.push_back(static_cast<PointId>(i));
  return {DistanceSpec::unit_interval(), ids, std::move(m)};
}

// triple loop on the full rational matrix
bool brute_metric(FiniteMetricSpace const& s) {
  auto const& m = s.matrix();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if ((i == j) != (m[i][j] == 0) || m[i][j] != m[j][i]) return false;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (m[i][j] > m[i][k] + m[k][j]) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("one sample point gives a vertical pair") {
  auto Y = build_Ym(unit_space({{0}}), 3);
  CHECK(Y.full.size() == 2);
  CHECK(Y.full.distance(TwoLevelSpace::lower(0), TwoLevelSpace::upper(0)) == Rational(1, 3));
  CHECK(eps_cover_check(Y).ok);
}

TEST_CASE("two-level spaces are metric and covered") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 6;
    int D = 2 + static_cast<int>(rng() % 9);
    auto sample = random_rational_sample(n, D, rng);
    for (int m = 2; m <= 4; ++m) {
      auto Y = build_Ym(sample, m);
      CHECK(brute_metric(Y.full));
      CHECK(Y.full.size() == 2 * n);
      CHECK(eps_cover_check(Y).ok);
      CHECK(Y.bottom == ceiling_metric(sample, m));
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(Y.full.distance(TwoLevelSpace::lower(i), TwoLevelSpace::upper(i)) == Rational(1, m));
        for (std::size_t k = 0; k < n; ++k)
          CHECK(Y.full.distance(TwoLevelSpace::upper(i), TwoLevelSpace::upper(k)) ==
                sample.at(i, k));
      }
    }
  }
  CHECK_THROWS_AS(build_Ym(unit_space({{0}}), 0), Error);
  CHECK_THROWS_AS(build_Ym(unit_space({{0, 2}, {2, 0}}), 2), Error);
}

TEST_CASE("eps-monochromatic demo at m = 2") {
  std::mt19937_64 rng(6);
  auto sample = random_rational_sample(6, 4, rng);
  std::vector<std::string> colors;
  for (std::size_t i = 0; i < 6; ++i) colors.push_back(i % 2 ? "blue" : "red");
  EngineConfig cfg;
  cfg.N = 10;
  auto r = eps_mono_demo(sample, colors, 2, 3, cfg);
  CHECK(r.verification.ok());
  CHECK(r.cover_confirmed);
  CHECK_FALSE(r.covered.empty());
}
