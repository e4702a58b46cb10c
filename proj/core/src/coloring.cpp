#include "forge/coloring.hpp"

#include <algorithm>

#include "forge/ambient.hpp"

namespace forge {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ColorId ColoringOracle::intern(std::string const& name) {
  auto it = std::find(palette_.begin(), palette_.end(), name);
  if (it != palette_.end()) return static_cast<ColorId>(it - palette_.begin());
  palette_.push_back(name);
  return static_cast<ColorId>(palette_.size() - 1);
}

ColorId ColoringOracle::find(std::string const& name) const {
  auto it = std::find(palette_.begin(), palette_.end(), name);
  if (it == palette_.end()) throw Error("unknown colour '" + name + "'");
  return static_cast<ColorId>(it - palette_.begin());
}

ColoringOracle ColoringOracle::constant(std::string color) {
  ColoringOracle o;
  o.kind_ = Kind::Constant;
  o.default_ = o.intern(color);
  return o;
}

ColoringOracle ColoringOracle::base_determined(std::vector<PointId> base,
                                               std::map<std::vector<int>, std::string> table,
                                               std::string default_color,
                                               std::vector<std::string> palette) {
  ColoringOracle o;
  o.kind_ = Kind::BaseDetermined;
  o.rule_ = Rule::Table;
  o.base_ = std::move(base);
  for (auto const& c : palette) o.intern(c);
  o.default_ = o.intern(default_color);
  for (auto const& [vec, name] : table) {
    if (vec.size() != o.base_.size()) throw Error("rule vector length differs from base size");
    o.table_[vec] = o.intern(name);
  }
  return o;
}

ColoringOracle ColoringOracle::nearest_base(std::vector<PointId> base,
                                            std::vector<std::string> base_colors) {
  if (base.empty() || base.size() != base_colors.size())
    throw Error("nearest-base colouring needs one colour per base point");
  ColoringOracle o;
  o.kind_ = Kind::BaseDetermined;
  o.rule_ = Rule::Nearest;
  o.base_ = std::move(base);
  for (auto const& c : base_colors) o.nearest_.push_back(o.intern(c));
  o.default_ = o.nearest_.front();
  return o;
}

ColoringOracle ColoringOracle::hash_random(std::uint64_t seed, std::vector<std::string> palette) {
  if (palette.empty()) throw Error("hash-random colouring needs at least one colour");
  ColoringOracle o;
  o.kind_ = Kind::HashRandom;
  o.seed_ = seed;
  for (auto const& c : palette) o.intern(c);
  return o;
}

ColorId ColoringOracle::color_for(std::span<int const> base_dists, PointId id) const {
  switch (kind_) {
    case Kind::Constant:
      return default_;
    case Kind::HashRandom:
      return static_cast<ColorId>(splitmix64(seed_ ^ splitmix64(id)) % palette_.size());
    case Kind::BaseDetermined:
      break;
  }
  if (base_dists.size() != base_.size()) throw Error("distance vector length differs from base");
  if (rule_ == Rule::Nearest) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < base_dists.size(); ++i)
      if (base_dists[i] < base_dists[best]) best = i;
    return nearest_[best];
  }
  auto it = table_.find(std::vector<int>(base_dists.begin(), base_dists.end()));
  return it == table_.end() ? default_ : it->second;
}

ColorId color_of(ColoringOracle const& oracle, AmbientSpace const& ambient, PointId x) {
  std::vector<int> dists;
  dists.reserve(oracle.base().size());
  for (auto b : oracle.base()) dists.push_back(ambient.distance(x, b));
  return oracle.color_for(dists, x);
}

std::vector<ColorId> admissible_colors(ColoringOracle const& oracle, KatetovMap const& f) {
  switch (oracle.kind()) {
    case ColoringOracle::Kind::Constant:
      return {oracle.default_color()};
    case ColoringOracle::Kind::HashRandom: {
      std::vector<ColorId> all(oracle.color_count());
      for (ColorId c = 0; c < all.size(); ++c) all[c] = c;
      return all;
    }
    case ColoringOracle::Kind::BaseDetermined:
      break;
  }
  std::vector<int> dists;
  for (auto b : oracle.base()) {
    if (!f.defined_at(b))
      throw Error("extend domain first: base point " + std::to_string(b) + " not in map domain");
    dists.push_back(f.int_at(b));
  }
  // Realizers are never base points themselves, so no zero entries occur here.
  return {oracle.color_for(dists, 0)};
}

bool contains(ColorSet const& set, ColorId c) {
  return std::find(set.begin(), set.end(), c) != set.end();
}

ColorSet complement(ColorSet const& set, std::size_t color_count) {
  ColorSet out;
  for (ColorId c = 0; c < color_count; ++c)
    if (!contains(set, c)) out.push_back(c);
  return out;
}

}  // namespace forge
