#include "forge/engine.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace forge {

namespace {

bool katetov_here(AmbientSpace const& amb, KatetovMap const& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      int a = f.int_at(f.domain[i]), b = f.int_at(f.domain[j]);
      int d = amb.distance(f.domain[i], f.domain[j]);
      if (std::abs(a - b) > d || d > a + b) return false;
    }
  return true;
}

void claim(bool ok, char const* what) {
  if (!ok) throw Error(std::string("internal claim failed: ") + what);
}

bool agrees_on(KatetovMap const& h, KatetovMap const& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!h.defined_at(f.domain[i]) || h.at(f.domain[i]) != f.values[i]) return false;
  return true;
}

KatetovMap merged(KatetovMap a, KatetovMap const& b) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!a.defined_at(b.domain[i])) a = a.with(b.domain[i], b.values[i]);
  return a;
}

// phi over X u {h} turned into phi-hat over X u {a, b}, both at phi(h)
KatetovMap hat(KatetovMap const& phi, std::vector<PointId> const& X, PointId a, PointId b) {
  auto out = restrict(phi, X);
  out = out.with(a, phi.at(kHypothetical));
  return out.with(b, phi.at(kHypothetical));
}

}  // namespace

KatetovMap at_point(KatetovMap const& phi, PointId u) { return rename(phi, kHypothetical, u); }

Engine::Engine(AmbientSpace& ambient, ColorSet gamma, EngineConfig cfg)
    : amb_(ambient), gamma_(std::move(gamma)), cfg_(cfg) {
  if (!amb_.coloring()) throw Error("engine needs a coloured ambient");
  if (gamma_.empty()) throw Error("empty colour class");
  if (cfg_.N < 1) throw Error("N must be at least 1");
  std::sort(gamma_.begin(), gamma_.end());
}

bool Engine::colour_forced(KatetovMap const& f) const {
  auto const& oracle = *amb_.coloring();
  if (!oracle.determined_by_base()) return false;
  for (auto b : oracle.base())
    if (!f.defined_at(b)) return false;
  for (auto c : admissible_colors(oracle, f))
    if (!contains(gamma_, c)) return false;
  return true;
}

bool Engine::large(Pair const& s) {
  ++stats_.largeness_checks;
  auto cfg = cfg_.largeness;
  if (!amb_.coloring()->determined_by_base()) cfg.mode = LargenessConfig::Mode::Bounded;
  return is_large(amb_, *amb_.coloring(), gamma_, s, cfg).large;
}

KatetovMap Engine::envelope(std::vector<PointId> const& X, KatetovMap const& g) const {
  KatetovMap out;
  int const p = amb_.p();
  for (auto y : X) {
    if (g.defined_at(y)) {
      out = out.with(y, g.at(y));
      continue;
    }
    int best = p;
    for (std::size_t i = 0; i < g.size(); ++i)
      best = std::min(best, g.int_at(g.domain[i]) + amb_.distance(g.domain[i], y));
    out = out.with(y, Rational(best));
  }
  return out;
}

CopyId Engine::j_closure(Pair const& s) {
  check_pair(amb_, s);
  if (cfg_.check_claims && !large(s)) throw BacktrackSignal("colour class is not large relative to the pair");
  return amb_.new_copy(s.copy, s.f.domain, {}, {ColorRule{s.f, gamma_}}, {}, "J");
}

CopyId Engine::hm_from_jm(Pair const& s, std::vector<PointId> const& F) {
  check_pair(amb_, s);
  if (F.empty()) throw Error("F must be non-empty");
  for (auto x : F)
    if (!s.f.defined_at(x)) throw Error("F is not a subset of dom f_s");
  if (restrict(s.f, F).int_min() != s.f.int_min())
    throw Error("min f_s|F differs from min f_s");
  auto J = j_closure(s);
  if (std::set<PointId>(F.begin(), F.end()).size() == s.f.size()) return J;
  return lemma_red_copy(amb_, J, F, s.f.domain, {s.f}, "H");
}

std::vector<KatetovMap> Engine::k_set(std::vector<PointId> const& X, KatetovMap const& h,
                                      KatetovMap const& f, std::size_t limit) const {
  int const m = f.int_min();
  auto space = amb_.snapshot(X);
  std::vector<Rational> row;
  for (auto x : X) row.push_back(h.at(x));
  space = space.with_point(kHypothetical, row);
  std::vector<PointId> domain = X;
  domain.push_back(kHypothetical);
  if (m < 2) return {};
  EnumerationConstraint c;
  c.fixed = f;
  c.upper_bounds.emplace_back(kHypothetical, Rational(m - 1));
  c.limit = limit;
  auto K = enumerate_katetov(space, domain, c);
  if (limit) return K;
  std::stable_sort(K.begin(), K.end(), [](KatetovMap const& a, KatetovMap const& b) {
    return a.at(kHypothetical) > b.at(kHypothetical);
  });
  return K;
}

Ind2Result Engine::ind2_step(std::vector<PointId> const& X, CopyId D, PointId u,
                             std::vector<KatetovMap> const& handled, KatetovMap const& s,
                             KatetovMap const& h, KatetovMap const& f) {
  ++stats_.ind2_steps;
  int const sh = s.int_at(kHypothetical);
  for (auto const& phi : handled) {
    if (phi == s) throw Error("s is already handled");
    if (phi.int_at(kHypothetical) < sh) throw Error("handled maps must not sit below s(h)");
  }
  auto const sX = restrict(s, X);
  if (sh >= sX.int_min()) {
    ++stats_.ind2_trivial;
    return {D, u};
  }

  auto const s1 = sX.with(u, Rational(sh + 1));
  claim(katetov_here(amb_, s1), "s1 is Katetov");
  int const m1 = s1.int_min();
  claim(m1 == sh + 1, "min s1 = s(h) + 1");
  if (sh == f.int_min() - 1) claim(m1 == f.int_min(), "min s1 = m when s(h) = m - 1");

  // (s2, D) <=_1 (s1, D): one witness w' carrying the value min s1 - 1
  std::optional<KatetovMap> s2;
  RealizeOptions in_d;
  in_d.within = D;
  for (int attempt = 0; attempt < 2 && !s2; ++attempt) {
    KatetovMap demand = s1;
    if (attempt == 1) {
      demand = KatetovMap();
      for (auto x : s1.domain) demand = demand.with(x, Rational(amb_.p()));
    }
    PointId w_prime;
    try {
      w_prime = amb_.realize(demand, in_d);
    } catch (RealizationFailure const&) {
      ++stats_.backtracks;
      continue;
    }
    auto cand = s1.with(w_prime, Rational(m1 - 1));
    if (!katetov_here(amb_, cand)) continue;
    if (cfg_.check_claims && !large({cand, D})) {
      ++stats_.backtracks;
      continue;
    }
    s2 = cand;
  }
  if (!s2) throw BacktrackSignal("no <=_1 refinement of s1 keeps the colour class large");

  PointId const w = amb_.realize(*s2, in_d);
  auto const h1 = restrict(h, X).with(u, Rational(1)).with(w, Rational(sh));
  claim(katetov_here(amb_, h1), "h1 is Katetov");
  PointId const v = amb_.realize(h1, in_d);
  auto const s3 = s2->with(v, Rational(sh));
  claim(katetov_here(amb_, s3), "s3 is Katetov");
  claim(amb_.realizes(w, s3), "w realizes s3");

  std::vector<PointId> Xuv = X;
  Xuv.push_back(u);
  Xuv.push_back(v);
  auto const Ds3 = hm_from_jm({s3, D}, Xuv);

  std::vector<KatetovMap> family{restrict(s3, Xuv)};
  for (auto const& phi : handled) family.push_back(hat(phi, X, u, v));
  std::vector<PointId> Xv = X;
  Xv.push_back(v);
  auto const E = lemma_red_copy(amb_, Ds3, Xv, Xuv, std::move(family), "ind2");
  return {E, v};
}

Ind1Result Engine::ind1_step(std::vector<PointId> const& X, CopyId A, KatetovMap const& h,
                             KatetovMap const& f) {
  ++stats_.ind1_steps;
  if (h.size() != X.size()) throw Error("h must be defined on all of X");
  for (auto x : X)
    if (!h.defined_at(x)) throw Error("h must be defined on all of X");
  for (auto x : f.domain)
    if (std::find(X.begin(), X.end(), x) == X.end()) throw Error("dom f must lie in X");
  claim(katetov_here(amb_, h), "h is Katetov over X");

  bool const orbit_demand = agrees_on(h, f);
  RealizeOptions in_a;
  in_a.within = A;
  if (orbit_demand) in_a.allowed_colors = gamma_;

  auto K = k_set(X, h, f);
  if (K.empty()) return {A, amb_.realize(h, in_a)};

  CopyId D = A;
  RealizeOptions plain;
  plain.within = A;
  PointId u = amb_.realize(h, plain);
  std::vector<KatetovMap> handled;
  for (auto const& s : K) {
    auto r = ind2_step(X, D, u, handled, s, h, f);
    D = r.E;
    u = r.v;
    handled.push_back(s);
  }
  if (!orbit_demand) return {D, u};

  ++stats_.corrections;
  PointId const x_prime = u;
  RealizeOptions in_b;
  in_b.within = D;
  in_b.allowed_colors = gamma_;
  PointId const x_star = amb_.realize(h.with(x_prime, Rational(1)), in_b);
  std::vector<KatetovMap> family;
  for (auto const& phi : K) family.push_back(hat(phi, X, x_star, x_prime));
  std::vector<PointId> G0 = X, G = X;
  G0.push_back(x_star);
  G.push_back(x_star);
  G.push_back(x_prime);
  auto const B = lemma_red_copy(amb_, D, G0, G, std::move(family), "ind1");
  return {B, x_star};
}

JResult Engine::run_schedule(Pair const& s, std::size_t prefix_min, std::size_t orbit_min,
                             bool inductive) {
  check_pair(amb_, s);
  auto const& f = s.f;
  int const p = amb_.p();
  int const range = orbit_isometry_type(f, p);

  JResult out;
  out.prefix = f.domain;
  CopyId A = s.copy;
  bool const direct = !amb_.coloring()->determined_by_base();
  if (direct) {
    // no colour can be promised in advance: the copy itself rejects wrong realizers
    A = amb_.new_copy(s.copy, f.domain, {}, {ColorRule{f, gamma_}}, {}, "direct");
    inductive = false;
  }

  std::size_t plain_faithful = 0, orbit_faithful = 0;
  auto place = [&](KatetovMap const& g) {
    auto h = envelope(out.prefix, g);
    bool const orbit_demand = agrees_on(h, f);
    PointId x;
    bool const forced = colour_forced(f);
    std::size_t& budget = orbit_demand ? orbit_faithful : plain_faithful;
    if (inductive && (!forced || budget < cfg_.faithful_steps)) {
      auto k = k_set(out.prefix, h, f, cfg_.fold_limit + 1).size();
      if (k > cfg_.fold_limit && !forced)
        throw BacktrackSignal("K has " + std::to_string(k) + " maps, beyond the fold limit");
      if (k <= cfg_.fold_limit) {
        ++budget;
        auto r = ind1_step(out.prefix, A, h, f);
        A = r.B;
        x = r.x;
      } else {
        ++stats_.ind1_forced;
        RealizeOptions opt;
        opt.within = A;
        if (orbit_demand) opt.allowed_colors = gamma_;
        x = amb_.realize(h, opt);
      }
    } else {
      if (inductive) ++stats_.ind1_forced;
      RealizeOptions opt;
      opt.within = A;
      if (orbit_demand) opt.allowed_colors = gamma_;
      x = amb_.realize(h, opt);
    }
    out.prefix.push_back(x);
    if (amb_.realizes(x, f)) {
      claim(contains(gamma_, amb_.color(x)), "new orbit point lies in the colour class");
      out.orbit.push_back(x);
    }
  };
  auto done = [&] { return out.prefix.size() >= prefix_min && out.orbit.size() >= orbit_min; };
  auto realized_in_orbit = [&](KatetovMap const& g) {
    return std::any_of(out.orbit.begin(), out.orbit.end(), [&](PointId y) { return amb_.realizes(y, g); });
  };

  // generic singletons over dom f
  for (auto x : f.domain)
    for (int v = 1; v <= p && !done(); ++v) place(KatetovMap({x}, {Rational(v)}));
  // first orbit points
  while (!done() && out.orbit.size() < cfg_.audit_n) place(f);
  // depth-k extension demands over the first audit_n orbit points
  std::vector<PointId> head(out.orbit.begin(), out.orbit.begin() + std::min(out.orbit.size(), cfg_.audit_n));
  std::vector<PointId> subset;
  std::function<void(std::size_t)> subsets = [&](std::size_t start) {
    if (!subset.empty()) {
      auto dom_space = amb_.snapshot(subset).with_spec(DistanceSpec::integer_range(range));
      for (auto const& g : enumerate_katetov(dom_space, subset)) {
        if (done() && orbit_min == 0) return;
        if (realized_in_orbit(g)) continue;
        place(merged(f, g));
      }
    }
    if (static_cast<int>(subset.size()) == cfg_.audit_k) return;
    for (std::size_t i = start; i < head.size(); ++i) {
      subset.push_back(head[i]);
      subsets(i + 1);
      subset.pop_back();
    }
  };
  if (orbit_min > 0) subsets(0);
  // padding: vary the distance to later orbit points
  for (std::size_t i = 0; !done(); ++i) {
    if (i >= out.orbit.size()) {
      place(f);
      continue;
    }
    for (int v = 1; v <= range && !done(); ++v) {
      auto g = f.with(out.orbit[i], Rational(v));
      if (!katetov_here(amb_, g) || realized_in_orbit(g)) continue;
      place(g);
    }
  }
  out.copy = A;
  return out;
}

JResult Engine::j1_construct(Pair const& s, std::size_t n) {
  if (s.f.empty() || s.f.int_min() != 1) throw Error("j1 needs min f_s = 1");
  if (n < s.f.size()) throw Error("prefix shorter than dom f_s");
  if (cfg_.check_claims && !large(s)) throw BacktrackSignal("colour class is not large relative to the pair");
  return run_schedule(s, n, 0, false);
}

JResult Engine::jm_construct(Pair const& s, std::size_t n) {
  check_pair(amb_, s);
  if (cfg_.check_claims && !large(s)) throw BacktrackSignal("colour class is not large relative to the pair");
  return run_schedule(s, 0, n, s.f.int_min() > 1);
}

RunResult monochromatic_copy(ColoringOracle const& coloring, int p, std::uint64_t seed,
                             EngineConfig const& cfg) {
  AmbientSpace amb(p, seed);
  PointId top = 0;
  for (auto b : coloring.base()) top = std::max(top, b);
  amb.grow_generic(static_cast<std::size_t>(top) + 1);
  amb.set_coloring(coloring);
  return monochromatic_copy(amb, cfg);
}

RunResult monochromatic_copy(AmbientSpace& amb, EngineConfig const& cfg) {
  if (!amb.coloring()) throw Error("ambient has no colouring");
  auto const coloring = *amb.coloring();
  int const p = amb.p();
  RunResult out;
  out.best_effort = !coloring.determined_by_base();
  RealizeOptions fresh;
  fresh.fresh_only = true;
  PointId const z = amb.realize(KatetovMap(), fresh);
  KatetovMap f({z}, {Rational(p)});
  for (auto b : coloring.base())
    if (!f.defined_at(b)) f = f.with(b, Rational(p));
  Pair const t{f, kRootCopy};
  out.log.push_back("pair t: z = " + std::to_string(z) + ", |dom f_t| = " + std::to_string(f.size()));

  auto lcfg = cfg.largeness;
  if (out.best_effort) lcfg.mode = LargenessConfig::Mode::Bounded;
  std::vector<ColorId> candidates;
  for (ColorId c = 0; c < coloring.color_count(); ++c) {
    auto r = is_large(amb, coloring, {c}, t, lcfg);
    out.traces.push_back(r.trace);
    if (r.large) {
      candidates.push_back(c);
      out.log.push_back("colour " + coloring.name(c) + " is large relative to t");
      continue;
    }
    auto comp = find_complement_large(amb, coloring, {c}, t, lcfg);
    out.log.push_back("colour " + coloring.name(c) + " is not large; complement large relative to some t' <=_0 t: " +
                      (comp.verified ? "verified" : "unverified"));
  }

  std::size_t attempts = 0;
  for (auto c : candidates) {
    if (attempts++ >= std::max<std::size_t>(cfg.backtrack_limit, 1)) break;
    Engine engine(amb, {c}, cfg);
    try {
      auto j = engine.jm_construct(t, cfg.N);
      std::vector<PointId> orbit(j.orbit.begin(), j.orbit.end());
      auto cert = make_certificate(amb, c, f, j.copy, j.prefix, orbit, cfg.audit_k, cfg.audit_n);
      auto report = verify_certificate(cert);
      auto const& st = engine.stats();
      out.stats.backtracks += st.backtracks;
      out.stats.ind1_steps += st.ind1_steps;
      out.stats.ind1_forced += st.ind1_forced;
      out.stats.ind2_steps += st.ind2_steps;
      out.stats.ind2_trivial += st.ind2_trivial;
      out.stats.corrections += st.corrections;
      out.stats.largeness_checks += st.largeness_checks;
      if (!report.ok()) {
        ++out.stats.backtracks;
        out.log.push_back("colour " + coloring.name(c) + ": certificate rejected: " + report.summary());
        continue;
      }
      out.cert = std::move(cert);
      out.ambient_stats = amb.stats();
      out.log.push_back("colour " + coloring.name(c) + ": certificate with " +
                        std::to_string(out.cert.orbit_prefix.size()) + " orbit points");
      return out;
    } catch (BacktrackSignal const& e) {
      ++out.stats.backtracks;
      out.log.push_back("colour " + coloring.name(c) + ": backtrack: " + e.what());
    } catch (RealizationFailure const& e) {
      ++out.stats.backtracks;
      out.log.push_back("colour " + coloring.name(c) + ": realization failed: " + e.what());
    }
  }
  throw LargenessDepthInsufficient("largeness-depth-insufficient: no colour class produced a certificate",
                                   out.traces);
}

}  // namespace forge
