#pragma once

#include <string>
#include <vector>

#include "forge/amalgam.hpp"
#include "forge/certificate.hpp"
#include "forge/largeness.hpp"

namespace forge {

struct EngineConfig {
  LargenessConfig largeness;
  std::size_t backtrack_limit = 8;
  std::size_t N = 100;               // orbit prefix length
  int audit_k = 2;
  std::size_t audit_n = 4;
  std::size_t fold_limit = 32;       // largest K folded through ind2
  std::size_t faithful_steps = 3;    // ind1 steps run in full even when the colour is forced
  bool check_claims = true;
};

/// A choice made on largeness evidence could not be carried out concretely.
class BacktrackSignal : public Error {
 public:
  using Error::Error;
};

class LargenessDepthInsufficient : public Error {
 public:
  LargenessDepthInsufficient(std::string what, std::vector<TraceNode> traces)
      : Error(std::move(what)), traces_(std::move(traces)) {}
  std::vector<TraceNode> const& traces() const { return traces_; }

 private:
  std::vector<TraceNode> traces_;
};

/// The placeholder point h in X u {h}, used as a domain id for maps in K.
inline constexpr PointId kHypothetical = 0xFFFFFFFFu;

struct EngineStats {
  std::size_t backtracks = 0;
  std::size_t ind1_steps = 0;
  std::size_t ind1_forced = 0;   // colour-forced shortcut
  std::size_t ind2_steps = 0;
  std::size_t ind2_trivial = 0;  // s(h) >= min s|X
  std::size_t corrections = 0;   // x' -> x* with d = 1
  std::size_t largeness_checks = 0;
};

struct JResult {
  CopyId copy = kRootCopy;           // every prefix point lies in this copy
  std::vector<PointId> prefix;       // X, dom f first
  std::vector<PointId> orbit;        // prefix points realizing f, in order
};

struct Ind1Result {
  CopyId B;
  PointId x;
};

struct Ind2Result {
  CopyId E;
  PointId v;
};

/// The inductive construction for one colour class over one ambient. Single-threaded.
class Engine {
 public:
  Engine(AmbientSpace& ambient, ColorSet gamma, EngineConfig cfg = {});

  AmbientSpace& ambient() { return amb_; }
  ColorSet const& gamma() const { return gamma_; }
  EngineStats const& stats() const { return stats_; }

  /// J_1 by back-and-forth: prefix of n orbit points inside C_s, realizers of f_s in gamma.
  JResult j1_construct(Pair const& s, std::size_t n);
  /// J_m for any m: j1 for m = 1, otherwise the ind1 loop.
  JResult jm_construct(Pair const& s, std::size_t n);

  /// J_m's conclusion recorded as a copy rule: a child of C_s containing dom f_s whose
  /// realizers of f_s all carry a colour of gamma.
  CopyId j_closure(Pair const& s);
  /// H_m from J_m: dom f_s n C = F and O(f_s|F, C) inside gamma.
  CopyId hm_from_jm(Pair const& s, std::vector<PointId> const& F);

  /// K = { phi Katetov over X u {h} : phi|F = f|F, phi(h) <= m-1 }, ordered by phi(h)
  /// non-increasing. Maps use kHypothetical for h. A nonzero limit stops the
  /// enumeration early, leaving an unordered partial set.
  std::vector<KatetovMap> k_set(std::vector<PointId> const& X, KatetovMap const& h,
                                KatetovMap const& f, std::size_t limit = 0) const;

  Ind2Result ind2_step(std::vector<PointId> const& X, CopyId D, PointId u,
                       std::vector<KatetovMap> const& handled, KatetovMap const& s,
                       KatetovMap const& h, KatetovMap const& f);
  Ind1Result ind1_step(std::vector<PointId> const& X, CopyId A, KatetovMap const& h,
                       KatetovMap const& f);

 private:
  AmbientSpace& amb_;
  ColorSet gamma_;
  EngineConfig cfg_;
  EngineStats stats_;

  bool colour_forced(KatetovMap const& f) const;
  bool large(Pair const& s);
  KatetovMap envelope(std::vector<PointId> const& X, KatetovMap const& g) const;
  JResult run_schedule(Pair const& s, std::size_t prefix_min, std::size_t orbit_min,
                       bool inductive);
};

/// Map over X u {h} re-read over X u {u}.
KatetovMap at_point(KatetovMap const& phi, PointId u);

struct RunResult {
  Certificate cert;
  EngineStats stats;
  AmbientStats ambient_stats;
  bool best_effort = false;          // hash-random colouring: no guarantee, direct search
  std::vector<std::string> log;
  std::vector<TraceNode> traces;     // largeness trees of the colour choice
};

/// The top-level construction: a fresh point z with f(z) = p (plus the colouring's base
/// at value p), a colour class chosen by the largeness dichotomy, and the J-induction.
/// Throws LargenessDepthInsufficient when every colour fails.
RunResult monochromatic_copy(ColoringOracle const& coloring, int p, std::uint64_t seed,
                             EngineConfig const& cfg = {});
/// Same on a prepared ambient whose colouring is already set.
RunResult monochromatic_copy(AmbientSpace& ambient, EngineConfig const& cfg = {});

}  // namespace forge
