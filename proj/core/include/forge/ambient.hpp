#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "forge/coloring.hpp"
#include "forge/katetov.hpp"

namespace forge {

using CopyId = std::uint32_t;
inline constexpr CopyId kRootCopy = 0;

/// Every member realizing `orbit` over its domain must carry a colour in `allowed`.
struct ColorRule {
  KatetovMap orbit;
  ColorSet allowed;
};

/// Pins the distance from every other member to `target` as a function of its
/// distances to `over`: a member realizing some `family[i]` over `over` sits at
/// `family_target[i]`, any other member at the shortest path through `over` and the
/// family orbits, capped at p. This is the free amalgam over those orbits, which keeps
/// the rule-defined set a copy of U_p.
struct TransferRule {
  std::vector<PointId> over;
  std::vector<int> over_target;  // d(over[i], target)
  PointId target = 0;
  std::vector<std::vector<int>> family;  // values on `over`
  std::vector<int> family_target;

  int forced(std::span<int const> tau, int p) const;
};

struct CopyData {
  std::optional<CopyId> parent;
  std::vector<PointId> members;
  std::vector<char> flags;  // indexed by point id
  std::vector<PointId> excluded;
  std::vector<ColorRule> color_rules;
  std::vector<TransferRule> transfer_rules;
  std::string label;

  bool has(PointId x) const { return x < flags.size() && flags[x]; }
};

struct RealizeOptions {
  CopyId within = kRootCopy;
  std::optional<ColorSet> allowed_colors;
  std::vector<PointId> avoid;
  bool fresh_only = false;
  std::size_t max_discards = 256;    // hash-coloured retries
  std::size_t node_limit = 200000;   // assignment search budget per fresh point
};

/// Thrown when no point can satisfy a realization request; the engine backtracks on it.
class RealizationFailure : public Error {
 public:
  using Error::Error;
};

struct AmbientStats {
  std::size_t fresh = 0;
  std::size_t reused = 0;
  std::size_t discarded = 0;
  std::size_t search_nodes = 0;
};

/// A growing finite prefix of U_p, closed on demand under one-point extensions.
/// Point ids are 0..size()-1 in creation order. Single writer.
class AmbientSpace {
 public:
  AmbientSpace(int p, std::uint64_t seed);
  /// Ambient whose first points are `seed_space` (an integer-range space; ids are
  /// renumbered 0..n-1 in the space's order).
  static AmbientSpace from_space(FiniteMetricSpace const& seed_space, std::uint64_t seed);

  int p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return rows_.size(); }
  int distance(PointId x, PointId y) const;
  bool realizes(PointId y, KatetovMap const& f) const;

  FiniteMetricSpace snapshot() const;
  FiniteMetricSpace snapshot(std::span<PointId const> ids) const;

  void set_coloring(ColoringOracle oracle);
  std::optional<ColoringOracle> const& coloring() const { return oracle_; }
  ColorId color(PointId x) const;

  /// A point of `within` realizing f (integer values), existing if possible, else fresh.
  PointId realize(KatetovMap const& f, RealizeOptions const& options = {});
  /// n distinct points of `within` realizing f.
  std::vector<PointId> orbit_prefix(KatetovMap const& f, CopyId within, std::size_t n);
  /// Fair FIFO processing of one-point demands over singletons and pairs until size() >= n.
  void grow_generic(std::size_t n);

  CopyId new_copy(CopyId parent, std::vector<PointId> initial, std::vector<PointId> excluded,
                  std::vector<ColorRule> color_rules, std::vector<TransferRule> transfer_rules,
                  std::string label);
  CopyData const& copy(CopyId c) const { return copies_.at(c); }
  std::size_t copy_count() const { return copies_.size(); }
  bool is_member(CopyId c, PointId x) const { return copies_.at(c).has(x); }
  std::vector<PointId> const& members(CopyId c) const { return copies_.at(c).members; }
  bool is_subcopy(CopyId child, CopyId ancestor) const;
  /// Whether x may join c: member of c's parent, not excluded, obeys c's rules.
  bool eligible(CopyId c, PointId x) const;
  /// Adds an eligible point to c. Throws otherwise.
  void admit(CopyId c, PointId x);

  AmbientStats const& stats() const { return stats_; }
  /// FNV-1a over p and the distance matrix.
  std::uint64_t digest() const;

 private:
  AmbientSpace(int p, std::uint64_t seed, bool with_initial_point);

  int p_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::vector<std::vector<std::uint8_t>> rows_;  // rows_[i][j] = d(i,j) for j < i
  std::vector<ColorId> colors_;
  std::optional<ColoringOracle> oracle_;
  std::vector<CopyData> copies_;
  AmbientStats stats_;

  // generic growth cursor
  std::size_t cursor_point_ = 0;
  std::vector<KatetovMap> batch_;
  std::size_t batch_pos_ = 0;

  std::vector<CopyId> chain(CopyId c) const;
  bool obeys_rules(CopyData const& c, PointId x) const;
  PointId append_point(std::vector<int> const& row, CopyId within);
  std::optional<PointId> create_fresh(KatetovMap const& f, RealizeOptions const& options);
  void refill_batch();
};

/// min(2 * min f, p): the orbit of f in a copy of U_p is a copy of U_n for this n.
int orbit_isometry_type(KatetovMap const& f, int p);

struct UnmetDemand {
  std::vector<PointId> subset;
  std::vector<int> values;
};

struct AuditReport {
  std::size_t demands = 0;
  std::size_t met_existing = 0;
  std::size_t met_by_growth = 0;
  std::vector<UnmetDemand> unmet;
  bool ok() const { return unmet.empty(); }
};

/// Extension property of copy c: for every subset S of its first n members with
/// 1 <= |S| <= k and every Katetov map over S with values in {1..range}, a realizer
/// exists in c. Missing realizers are grown on demand when `grow` is set.
AuditReport audit_extension_property(AmbientSpace& ambient, CopyId c, int k, std::size_t n,
                                     int range, bool grow = true);

/// Same audit for the orbit O(f, c) treated as a space of its own: realizers must
/// also realize f. The orbit prefix is taken (and grown) to n points first.
AuditReport audit_orbit(AmbientSpace& ambient, KatetovMap const& f, CopyId c, int k,
                        std::size_t n, int range, bool grow = true);

/// Static audit over a frozen space: subsets of the first n of `targets`, realizers
/// searched among `candidates`. Nothing grows.
AuditReport audit_static(FiniteMetricSpace const& space, std::span<PointId const> targets,
                         std::span<PointId const> candidates, int k, std::size_t n, int range);

}  // namespace forge
