#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "forge/ambient.hpp"

namespace forge {

/// s = (f_s, C_s): a Katetov map with values in {1..p} whose domain lies in the copy.
struct Pair {
  KatetovMap f;
  CopyId copy = kRootCopy;
};

/// Throws unless dom f lies in the copy, values lie in {1..p} and f is Katetov.
void check_pair(AmbientSpace const& ambient, Pair const& s);

/// t <=_k s: dom f_s in dom f_t in C_t in C_s, f_t extends f_s, and
/// min f_t = min f_s - k when min f_s > k, else 1.
bool refines(AmbientSpace const& ambient, Pair const& t, Pair const& s, int k);

struct LargenessConfig {
  enum class Mode { Exact, Bounded };
  Mode mode = Mode::Exact;
  int witness_budget = 2;        // extra generic points when ranging over t <=_0 s
  std::size_t orbit_sample = 8;  // "infinite" threshold in bounded mode
  int depth_cap = 64;
};

struct TraceNode {
  std::string step;  // "large", "t", "u", "leaf", "memo"
  std::vector<int> values;
  int min_value = 0;
  bool result = false;
  std::vector<TraceNode> children;
};

struct LargenessResult {
  bool large = false;
  bool conclusive = true;
  std::size_t evaluations = 0;
  std::size_t memo_hits = 0;
  TraceNode trace;
};

LargenessResult is_large(AmbientSpace const& ambient, ColoringOracle const& oracle,
                         ColorSet const& gamma, Pair const& s, LargenessConfig const& cfg = {});

struct ComplementResult {
  bool gamma_large = false;
  std::optional<Pair> t;     // t <=_0 s with the complement large relative to t
  bool verified = false;     // refines(t, s, 0) and is_large(complement, t) re-checked
  bool conclusive = true;
};

/// Either reports gamma large relative to s, or finds t <=_0 s (materialized in the
/// ambient, inside C_s) with the complement of gamma large relative to t.
ComplementResult find_complement_large(AmbientSpace& ambient, ColoringOracle const& oracle,
                                       ColorSet const& gamma, Pair const& s,
                                       LargenessConfig const& cfg = {});

}  // namespace forge
