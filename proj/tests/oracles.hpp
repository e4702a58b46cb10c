#pragma once
// Brute-force references. Nothing here calls into the library's metric code: spaces are
// raw integer matrices and every check is the literal triangle inequality.

#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "forge/metric.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

inline bool is_metric(Matrix const& d) {
  std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] != 0) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && (d[i][j] <= 0 || d[i][j] != d[j][i])) return false;
      for (std::size_t k = 0; k < n; ++k)
        if (d[i][k] > d[i][j] + d[j][k]) return false;
    }
  }
  return true;
}

/// d extended by one point at distances `vals`.
inline Matrix extend(Matrix d, std::vector<int> const& vals) {
  std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) d[i].push_back(vals[i]);
  d.emplace_back(vals);
  d.back().push_back(0);
  return d;
}

inline bool one_point_ok(Matrix const& d, std::vector<int> const& vals) { return is_metric(extend(d, vals)); }

/// Calls visit on every tuple in {1..p}^n.
inline void tuples(std::size_t n, int p, std::function<void(std::vector<int> const&)> const& visit) {
  std::vector<int> t(n, 1);
  while (true) {
    visit(t);
    std::size_t i = 0;
    while (i < n && t[i] == p) t[i++] = 1;
    if (i == n) return;
    ++t[i];
  }
}

/// Every metric on n labelled points with distances in {1..p}.
inline std::vector<Matrix> all_spaces(std::size_t n, int p) {
  std::vector<Matrix> out;
  std::size_t pairs = n * (n - 1) / 2;
  tuples(pairs, p, [&](std::vector<int> const& t) {
    Matrix d(n, std::vector<int>(n, 0));
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = t[k++];
    if (is_metric(d)) out.push_back(std::move(d));
  });
  return out;
}

inline std::size_t count_extensions(Matrix const& d, int p) {
  std::size_t c = 0;
  tuples(d.size(), p, [&](std::vector<int> const& v) { c += one_point_ok(d, v); });
  return c;
}

/// Shortest-path metric of random weights in {1..p}, capped at p.
inline Matrix random_space(std::size_t n, int p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(1, p);
  Matrix d(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = w(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline forge::FiniteMetricSpace to_space(Matrix const& d, int p, std::vector<forge::PointId> ids = {}) {
  if (ids.empty())
    for (std::size_t i = 0; i < d.size(); ++i) ids.push_back(static_cast<forge::PointId>(i));
  std::vector<std::vector<forge::Rational>> m;
  for (auto const& row : d) {
    std::vector<forge::Rational> r;
    for (int v : row) r.emplace_back(v);
    m.push_back(std::move(r));
  }
  return {forge::DistanceSpec::integer_range(p), std::move(ids), std::move(m)};
}

/// Rational triangle check on a library space, entry by entry.
inline bool rational_metric(forge::FiniteMetricSpace const& s) {
  std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if ((i == j) != (s.at(i, j) == forge::Rational(0))) return false;
      if (s.at(i, j) != s.at(j, i) || s.at(i, j) < 0) return false;
      for (std::size_t k = 0; k < n; ++k)
        if (s.at(i, k) > s.at(i, j) + s.at(j, k)) return false;
    }
  return true;
}

}  // namespace oracle
