#include "forge/bridge.hpp"

#include <optional>

namespace forge {

TwoLevelSpace build_Ym(FiniteMetricSpace const& sample, int m) {
  if (m < 1) throw Error("m must be at least 1");
  auto report = validate_metric(sample);
  if (!report.ok()) throw Error("sample is not a metric space: " + report.summary());
  auto const n = sample.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (sample.at(i, j) <= 0 || sample.at(i, j) > 1))
        throw Error("sample distance " + to_string(sample.at(i, j)) + " outside (0,1]");

  TwoLevelSpace Y;
  Y.m = m;
  Y.top = sample.with_spec(DistanceSpec::unit_interval());
  Y.bottom = ceiling_metric(Y.top, m);

  auto const N = 2 * n;
  std::vector<std::vector<std::optional<Rational>>> d(N, std::vector<std::optional<Rational>>(N));
  Rational const step(1, m);
  for (std::size_t i = 0; i < n; ++i) {
    d[2 * i][2 * i] = d[2 * i + 1][2 * i + 1] = Rational(0);
    d[2 * i][2 * i + 1] = d[2 * i + 1][2 * i] = step;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      d[2 * i + 1][2 * j + 1] = Y.top.at(i, j);
      d[2 * i][2 * j] = Y.bottom.at(i, j);
    }
  }
  auto fixed = d;
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t i = 0; i < N; ++i) {
      if (!d[i][k]) continue;
      for (std::size_t j = 0; j < N; ++j) {
        if (!d[k][j]) continue;
        auto via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
      }
    }
  std::vector<PointId> ids(N);
  std::vector<std::vector<Rational>> mat(N, std::vector<Rational>(N));
  for (std::size_t i = 0; i < N; ++i) {
    ids[i] = static_cast<PointId>(i);
    for (std::size_t j = 0; j < N; ++j) {
      if (fixed[i][j] && *fixed[i][j] != *d[i][j])
        throw Error("specified distance between " + std::to_string(i) + " and " + std::to_string(j) +
                    " is longer than a path through the other clauses");
      mat[i][j] = d[i][j] ? std::min(*d[i][j], Rational(1)) : Rational(1);
    }
  }
  Y.full = FiniteMetricSpace(DistanceSpec::unit_interval(), std::move(ids), std::move(mat));
  auto full_report = validate_metric(Y.full);
  if (!full_report.ok()) throw Error("Y_m completion is not a metric: " + full_report.summary());
  return Y;
}

CoverReport eps_cover_check(TwoLevelSpace const& Y) {
  CoverReport out;
  auto const n = Y.full.size() / 2;
  Rational const eps(1, Y.m);
  for (std::size_t i = 0; i < n; ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < n && !covered; ++j)
      covered = Y.full.distance(TwoLevelSpace::upper(i), TwoLevelSpace::lower(j)) <= eps;
    if (!covered) out.uncovered.push_back(i);
  }
  out.ok = out.uncovered.empty();
  return out;
}

EpsMonoReport eps_mono_demo(FiniteMetricSpace const& sample, std::vector<std::string> const& top_colors,
                            int m, std::uint64_t seed, EngineConfig const& cfg) {
  if (top_colors.size() != sample.size()) throw Error("one colour per sample point is required");
  if (sample.empty()) throw Error("empty sample");
  EpsMonoReport out;
  out.Y = build_Ym(sample, m);

  // bottom level as an integer-range(m) space: ids 0..n-1 in sample order
  auto mat = out.Y.bottom.matrix();
  for (auto& row : mat)
    for (auto& v : row) v *= m;
  std::vector<PointId> ids(sample.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<PointId>(i);
  FiniteMetricSpace grid(DistanceSpec::integer_range(m), ids, std::move(mat));
  auto amb = AmbientSpace::from_space(grid, seed);
  amb.set_coloring(ColoringOracle::nearest_base(ids, top_colors));

  out.run = monochromatic_copy(amb, cfg);
  out.verification = verify_certificate(out.run.cert);
  out.target = out.run.cert.target;
  auto const& oracle = out.run.cert.coloring;
  Rational const eps(1, m);
  bool confirmed = true;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (amb.color(static_cast<PointId>(i)) != out.target) continue;
    out.covered.push_back(i);
    auto d = out.Y.full.distance(TwoLevelSpace::upper(i), TwoLevelSpace::lower(i));
    if (d > eps || oracle.name(amb.color(static_cast<PointId>(i))) != top_colors[i]) confirmed = false;
  }
  out.cover_confirmed = confirmed && out.verification.ok();
  return out;
}

FiniteMetricSpace random_rational_sample(std::size_t n, int D, std::mt19937_64& rng) {
  if (D < 1) throw Error("D must be at least 1");
  std::uniform_int_distribution<int> w(1, D);
  std::vector<std::vector<int>> g(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g[i][j] = g[j][i] = w(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i][j] = std::min(g[i][j], g[i][k] + g[k][j]);
  std::vector<PointId> ids(n);
  std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = static_cast<PointId>(i);
    for (std::size_t j = 0; j < n; ++j) mat[i][j] = Rational(g[i][j], D);
  }
  return {DistanceSpec::unit_interval(), std::move(ids), std::move(mat)};
}

}  // namespace forge
