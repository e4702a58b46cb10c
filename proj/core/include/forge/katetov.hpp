#pragma once

#include <optional>
#include <span>
#include <vector>

#include "forge/metric.hpp"

namespace forge {

/// Finite description of a one-point metric extension: the new point sits at
/// distance values[i] from domain[i].
struct KatetovMap {
  std::vector<PointId> domain;
  std::vector<Rational> values;

  KatetovMap() = default;
  KatetovMap(std::vector<PointId> dom, std::vector<Rational> vals);

  std::size_t size() const { return domain.size(); }
  bool empty() const { return domain.empty(); }
  bool defined_at(PointId x) const;
  /// Throws if x is not in the domain.
  Rational const& at(PointId x) const;
  std::optional<Rational> min_value() const;

  /// Integer value at x (asserts the value is integral).
  int int_at(PointId x) const;
  int int_min() const;

  /// Copy extended by one more (point, value). Throws if x is already in the domain.
  KatetovMap with(PointId x, Rational v) const;

  bool operator==(KatetovMap const&) const = default;
};

/// Both Katetov inequalities over every pair of the domain, within `space`.
/// Throws on unknown ids and on values outside the spec's distance set.
bool is_katetov(KatetovMap const& f, FiniteMetricSpace const& space);

/// Same check without the distance-set requirement (used for rational and abstract maps).
bool satisfies_katetov_inequalities(KatetovMap const& f, FiniteMetricSpace const& space);

struct EnumerationConstraint {
  std::optional<KatetovMap> fixed;      // required restriction
  std::optional<Rational> min_value;    // every value >= this
  std::vector<std::pair<PointId, Rational>> upper_bounds;  // value at point <= bound
  std::size_t limit = 0;                // stop after this many maps; 0: no limit
};

/// Every Katetov map over `domain` satisfying `constraint`, in lexicographic order of
/// values taken over the domain sorted by the space's point order.
std::vector<KatetovMap> enumerate_katetov(FiniteMetricSpace const& space,
                                          std::span<PointId const> domain,
                                          EnumerationConstraint const& constraint = {});

/// Counts without materializing.
std::size_t count_katetov(FiniteMetricSpace const& space, std::span<PointId const> domain,
                          EnumerationConstraint const& constraint = {});

/// The space X u {f}: a fresh point `fresh` at distance f(x) from every x in dom f.
/// `space` must be exactly the domain of f (any order). Throws on Katetov violation.
FiniteMetricSpace extend_space_by_map(FiniteMetricSpace const& space, KatetovMap const& f,
                                      PointId fresh);

/// f restricted to F (order of F). Throws if F is not a subset of dom f.
KatetovMap restrict(KatetovMap const& f, std::span<PointId const> F);

/// f with every domain point renamed through `from -> to`.
KatetovMap rename(KatetovMap const& f, PointId from, PointId to);

}  // namespace forge
