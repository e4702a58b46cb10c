#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "forge/katetov.hpp"

namespace forge {

class AmbientSpace;

using ColorId = std::uint32_t;

/// A finite colouring whose value at a point is fixed at creation time.
///
/// - constant: one colour everywhere.
/// - base-determined: a function of the point's distance vector to `base`
///   (a lookup table with a default, or "nearest base point").
/// - hash-random: a seeded hash of the point id; unknowable before the point exists.
class ColoringOracle {
 public:
  enum class Kind { Constant, BaseDetermined, HashRandom };
  enum class Rule { Table, Nearest };

  static ColoringOracle constant(std::string color);
  static ColoringOracle base_determined(std::vector<PointId> base,
                                        std::map<std::vector<int>, std::string> table,
                                        std::string default_color,
                                        std::vector<std::string> palette = {});
  /// Colour of the nearest base point (ties: lowest base index).
  static ColoringOracle nearest_base(std::vector<PointId> base,
                                     std::vector<std::string> base_colors);
  static ColoringOracle hash_random(std::uint64_t seed, std::vector<std::string> palette);

  Kind kind() const { return kind_; }
  Rule rule() const { return rule_; }
  std::vector<PointId> const& base() const { return base_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t color_count() const { return palette_.size(); }
  std::vector<std::string> const& palette() const { return palette_; }
  std::string const& name(ColorId c) const { return palette_.at(c); }
  /// Throws on unknown names.
  ColorId find(std::string const& name) const;

  /// Whether the colour of a point follows from its distances to base alone.
  bool determined_by_base() const { return kind_ != Kind::HashRandom; }

  /// Colour of point `id` whose distances to base() are `base_dists`.
  ColorId color_for(std::span<int const> base_dists, PointId id) const;

  std::map<std::vector<int>, ColorId> const& table() const { return table_; }
  ColorId default_color() const { return default_; }
  std::vector<ColorId> const& nearest_colors() const { return nearest_; }

 private:
  Kind kind_ = Kind::Constant;
  Rule rule_ = Rule::Table;
  std::vector<std::string> palette_;
  std::vector<PointId> base_;
  std::map<std::vector<int>, ColorId> table_;
  std::vector<ColorId> nearest_;
  ColorId default_ = 0;
  std::uint64_t seed_ = 0;

  ColorId intern(std::string const& name);
};

ColorId color_of(ColoringOracle const& oracle, AmbientSpace const& ambient, PointId x);

/// Colours a realizer of f can carry. A singleton for base-determined oracles when
/// base is covered by dom f; every colour for hash-random oracles.
/// Throws forge::Error("extend domain first ...") if base is not covered.
std::vector<ColorId> admissible_colors(ColoringOracle const& oracle, KatetovMap const& f);

/// Set of colours, used as a colour class Gamma.
using ColorSet = std::vector<ColorId>;
bool contains(ColorSet const& set, ColorId c);
ColorSet complement(ColorSet const& set, std::size_t color_count);

}  // namespace forge
