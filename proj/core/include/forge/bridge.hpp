#pragma once

#include <random>
#include <string>
#include <vector>

#include "forge/engine.hpp"

namespace forge {

/// Y_m over a finite sample: the sample on top, its ceiling image at grid m below, and
/// vertical pairs at distance 1/m. In `full`, sample point i is 2i below and 2i+1 on top.
struct TwoLevelSpace {
  int m = 1;
  FiniteMetricSpace top;
  FiniteMetricSpace bottom;
  FiniteMetricSpace full;

  static PointId lower(std::size_t i) { return static_cast<PointId>(2 * i); }
  static PointId upper(std::size_t i) { return static_cast<PointId>(2 * i + 1); }
};

/// Cross-level distances come from the shortest-path completion of the specified
/// entries, capped at 1. Throws if m < 1, the sample is invalid or has a distance
/// outside (0, 1], or the completion fails validation.
TwoLevelSpace build_Ym(FiniteMetricSpace const& sample, int m);

struct CoverReport {
  bool ok = true;
  std::vector<std::size_t> uncovered;  // sample indices
};

/// Every top point within 1/m of some bottom point.
CoverReport eps_cover_check(TwoLevelSpace const& Y);

struct EpsMonoReport {
  TwoLevelSpace Y;
  RunResult run;
  VerificationReport verification;
  ColorId target = 0;
  std::vector<std::size_t> covered;  // top points whose partner carries the target colour
  bool cover_confirmed = false;
  std::string completion = "shortest-path completion of the cross-level distances, capped at 1";
};

/// Colours the grid ambient by nearest bottom point (colours taken from the top level
/// through the vertical pairs), runs the engine there, then pulls the target colour
/// back up through the 1/m vertical distance.
EpsMonoReport eps_mono_demo(FiniteMetricSpace const& sample, std::vector<std::string> const& top_colors,
                            int m, std::uint64_t seed, EngineConfig const& cfg = {});

/// n points, shortest-path metric of random weights in {1..D} divided by D.
FiniteMetricSpace random_rational_sample(std::size_t n, int D, std::mt19937_64& rng);

}  // namespace forge
