#include "forge/katetov.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <unordered_set>

namespace forge {

KatetovMap::KatetovMap(std::vector<PointId> dom, std::vector<Rational> vals)
    : domain(std::move(dom)), values(std::move(vals)) {
  if (domain.size() != values.size()) throw Error("Katetov map domain/value length mismatch");
}

bool KatetovMap::defined_at(PointId x) const {
  return std::find(domain.begin(), domain.end(), x) != domain.end();
}

Rational const& KatetovMap::at(PointId x) const {
  auto it = std::find(domain.begin(), domain.end(), x);
  if (it == domain.end()) throw Error("point " + std::to_string(x) + " not in map domain");
  return values[static_cast<std::size_t>(it - domain.begin())];
}

std::optional<Rational> KatetovMap::min_value() const {
  if (values.empty()) return std::nullopt;
  return *std::min_element(values.begin(), values.end());
}

int KatetovMap::int_at(PointId x) const {
  auto const& v = at(x);
  assert(v.denominator() == 1);
  return static_cast<int>(v.numerator());
}

int KatetovMap::int_min() const {
  auto m = min_value();
  if (!m) throw Error("min of an empty map");
  return static_cast<int>(m->numerator());
}

KatetovMap KatetovMap::with(PointId x, Rational v) const {
  if (defined_at(x)) throw Error("point " + std::to_string(x) + " already in map domain");
  auto out = *this;
  out.domain.push_back(x);
  out.values.push_back(v);
  return out;
}

namespace {

bool pair_ok(Rational const& fx, Rational const& fy, Rational const& d) {
  auto diff = fx > fy ? fx - fy : fy - fx;
  return diff <= d && d <= fx + fy;
}

}  // namespace

bool satisfies_katetov_inequalities(KatetovMap const& f, FiniteMetricSpace const& space) {
  std::vector<std::size_t> idx;
  idx.reserve(f.size());
  for (auto x : f.domain) idx.push_back(space.index_of(x));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.values[i] <= 0) return false;
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      if (!pair_ok(f.values[i], f.values[j], space.at(idx[i], idx[j]))) return false;
    }
  }
  return true;
}

bool is_katetov(KatetovMap const& f, FiniteMetricSpace const& space) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!space.spec().permits(f.values[i])) {
      throw Error("value " + to_string(f.values[i]) + " at point " + std::to_string(f.domain[i]) +
                  " outside the distance set");
    }
  }
  return satisfies_katetov_inequalities(f, space);
}

namespace {

template <typename Visit>
void enumerate_impl(FiniteMetricSpace const& space, std::span<PointId const> domain,
                    EnumerationConstraint const& c, Visit&& visit) {
  std::vector<PointId> order(domain.begin(), domain.end());
  {
    std::unordered_set<PointId> seen;
    for (auto x : order)
      if (!seen.insert(x).second) throw Error("repeated point in enumeration domain");
  }
  std::sort(order.begin(), order.end(), [&](PointId a, PointId b) {
    return space.index_of(a) < space.index_of(b);
  });
  if (c.fixed) {
    for (auto x : c.fixed->domain)
      if (std::find(order.begin(), order.end(), x) == order.end())
        throw Error("fixed restriction is not over a subset of the domain");
  }

  auto const all = space.spec().values();
  std::vector<std::vector<Rational>> choices(order.size());
  std::vector<std::size_t> idx(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    idx[i] = space.index_of(order[i]);
    auto x = order[i];
    if (c.fixed && c.fixed->defined_at(x)) {
      choices[i] = {c.fixed->at(x)};
      continue;
    }
    for (auto const& v : all) {
      if (c.min_value && v < *c.min_value) continue;
      bool ok = true;
      for (auto const& [p, bound] : c.upper_bounds)
        if (p == x && v > bound) ok = false;
      if (ok) choices[i].push_back(v);
    }
  }

  std::vector<Rational> current(order.size());
  std::size_t found = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == order.size()) {
      visit(order, current);
      ++found;
      return;
    }
    for (auto const& v : choices[i]) {
      if (c.limit && found >= c.limit) return;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = pair_ok(v, current[j], space.at(idx[i], idx[j]));
      if (!ok) continue;
      current[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

}  // namespace

std::vector<KatetovMap> enumerate_katetov(FiniteMetricSpace const& space,
                                          std::span<PointId const> domain,
                                          EnumerationConstraint const& constraint) {
  std::vector<KatetovMap> out;
  enumerate_impl(space, domain, constraint,
                 [&](std::vector<PointId> const& order, std::vector<Rational> const& vals) {
                   out.emplace_back(order, vals);
                 });
  return out;
}

std::size_t count_katetov(FiniteMetricSpace const& space, std::span<PointId const> domain,
                          EnumerationConstraint const& constraint) {
  std::size_t n = 0;
  enumerate_impl(space, domain, constraint, [&](auto const&, auto const&) { ++n; });
  return n;
}

FiniteMetricSpace extend_space_by_map(FiniteMetricSpace const& space, KatetovMap const& f,
                                      PointId fresh) {
  if (space.size() != f.size()) throw Error("extension space must be exactly the map's domain");
  if (!is_katetov(f, space)) throw Error("map is not Katetov over its domain");
  std::vector<Rational> row;
  row.reserve(space.size());
  for (auto x : space.points()) row.push_back(f.at(x));
  return space.with_point(fresh, row);
}

KatetovMap restrict(KatetovMap const& f, std::span<PointId const> F) {
  KatetovMap out;
  for (auto x : F) {
    out.domain.push_back(x);
    out.values.push_back(f.at(x));
  }
  return out;
}

KatetovMap rename(KatetovMap const& f, PointId from, PointId to) {
  auto out = f;
  for (auto& x : out.domain)
    if (x == from) x = to;
  return out;
}

}  // namespace forge
