// Acceptance suite: one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "forge/bridge.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, char const* name, double limit_s, std::function<Outcome()> const& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (std::exception const& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = o.pass && s < limit_s;
  if (o.pass && !ok) o.detail += "; over the time limit";
  failures += !ok;
  std::printf("%s [%2d] %-34s %8.2fs (limit %.0fs)  %s\n", ok ? "PASS" : "FAIL", id, name, s, limit_s,
              o.detail.c_str());
  std::fflush(stdout);
}

template <class... A>
std::string fmt(char const* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

KatetovMap map_of(std::vector<int> const& vals) {
  KatetovMap f;
  for (std::size_t i = 0; i < vals.size(); ++i) f = f.with(static_cast<PointId>(i), Rational(vals[i]));
  return f;
}

Outcome katetov_equivalence() {
  std::size_t cases = 0, bad = 0;
  for (int p = 1; p <= 4; ++p)
    for (std::size_t n = 1; n <= 3; ++n)
      for (auto const& d : oracle::all_spaces(n, p)) {
        auto space = oracle::to_space(d, p);
        oracle::tuples(n, p, [&](std::vector<int> const& v) {
          std::vector<Rational> row(v.begin(), v.end());
          bool metric = validate_metric(space.with_point(100, row)).ok();
          bad += is_katetov(map_of(v), space) != metric;
          ++cases;
        });
      }
  return {bad == 0, fmt("%zu cases, %zu mismatches", cases, bad)};
}

Outcome enumeration_counts() {
  std::size_t spaces = 0, bad = 0;
  for (int p = 1; p <= 4; ++p)
    for (std::size_t n = 1; n <= 4; ++n)
      for (auto const& d : oracle::all_spaces(n, p)) {
        auto space = oracle::to_space(d, p);
        bad += enumerate_katetov(space, space.points()).size() != oracle::count_extensions(d, p);
        ++spaces;
      }
  return {bad == 0, fmt("%zu spaces, %zu mismatches", spaces, bad)};
}

Outcome extension_property() {
  std::ostringstream out;
  bool ok = true;
  for (int p = 2; p <= 4; ++p) {
    AmbientSpace amb(p, 1000 + p);
    amb.grow_generic(20);
    auto r = audit_extension_property(amb, kRootCopy, 2, 20, p);
    ok = ok && r.ok() && r.demands == r.met_existing + r.met_by_growth;
    out << "p=" << p << ": " << r.demands << " demands, " << r.met_existing << " met, "
        << r.met_by_growth << " grown, " << r.unmet.size() << " unmet; ";
  }
  return {ok, out.str()};
}

Outcome orbit_type() {
  std::size_t maps = 0, violations = 0, demands = 0;
  for (int p = 3; p <= 5; ++p) {
    std::mt19937_64 rng(40 + p);
    AmbientSpace amb(p, 400 + p);
    amb.grow_generic(8);
    for (int i = 0; i < 50; ++i) {
      std::size_t k = 1 + rng() % 3;
      std::vector<PointId> dom;
      while (dom.size() < k) {
        auto x = static_cast<PointId>(rng() % 8);
        if (std::find(dom.begin(), dom.end(), x) == dom.end()) dom.push_back(x);
      }
      std::sort(dom.begin(), dom.end());
      auto all = enumerate_katetov(amb.snapshot(dom), dom);
      auto const& f = all[rng() % all.size()];
      int n = std::min(2 * f.int_min(), p);
      auto orbit = amb.orbit_prefix(f, kRootCopy, 12);
      for (auto a : orbit)
        for (auto b : orbit)
          if (a != b && amb.distance(a, b) > n) ++violations;
      auto r = audit_orbit(amb, f, kRootCopy, 2, 12, n);
      violations += r.unmet.size() + (orbit.size() != 12);
      demands += r.demands;
      ++maps;
    }
  }
  return {violations == 0, fmt("%zu maps, %zu audit demands, %zu violations", maps, demands, violations)};
}

Outcome amalgamation() {
  std::mt19937_64 rng(55);
  std::size_t bad = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    int p = 1 + static_cast<int>(rng() % 4);
    std::size_t ns = rng() % 4, nl = 1 + rng() % (8 - ns), nr = 1 + rng() % (8 - ns);
    auto big = oracle::random_space(ns + nl + nr, p, rng);
    auto sub = [&](std::size_t from, std::size_t to, bool with_shared) {
      std::vector<std::size_t> idx;
      if (with_shared)
        for (std::size_t i = 0; i < ns; ++i) idx.push_back(i);
      for (std::size_t i = from; i < to; ++i) idx.push_back(i);
      oracle::Matrix m(idx.size(), std::vector<int>(idx.size()));
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) m[a][b] = big[idx[a]][idx[b]];
      return m;
    };
    auto L = sub(ns, ns + nl, true), R = sub(ns + nl, ns + nl + nr, true);
    AmalgamDiagram d;
    d.left = oracle::to_space(L, p);
    d.right = oracle::to_space(R, p);
    d.shared = oracle::to_space(sub(0, 0, true), p);
    for (std::size_t i = 0; i < ns; ++i) {
      d.embed_left[static_cast<PointId>(i)] = static_cast<PointId>(i);
      d.embed_right[static_cast<PointId>(i)] = static_cast<PointId>(i);
    }
    auto w = strong_amalgamate(d);
    bool ok = validate_metric(w.space).ok() && w.space.size() == ns + nl + nr;
    for (auto const& [a, wa] : w.left_to_w)
      for (auto const& [b, wb] : w.left_to_w) ok = ok && w.space.distance(wa, wb) == d.left.distance(a, b);
    for (auto const& [a, wa] : w.right_to_w)
      for (auto const& [b, wb] : w.right_to_w) ok = ok && w.space.distance(wa, wb) == d.right.distance(a, b);
    // cross distances: shortest path through the shared points, capped at p
    for (std::size_t a = ns; a < L.size(); ++a)
      for (std::size_t b = ns; b < R.size(); ++b) {
        int best = p;
        for (std::size_t s = 0; s < ns; ++s) best = std::min(best, L[a][s] + R[s][b]);
        ok = ok && w.space.distance(w.left_to_w.at(static_cast<PointId>(a)),
                                    w.right_to_w.at(static_cast<PointId>(b))) == best;
      }
    bad += !ok;
  }

  std::size_t runs = 0, transfers = 0, red_bad = 0;
  for (int trial = 0; runs < 60 && trial < 2000; ++trial) {
    int p = 2 + trial % 3;
    AmbientSpace amb(p, 7000 + static_cast<std::uint64_t>(trial));
    amb.grow_generic(6);
    std::size_t g0 = 1 + rng() % 2, extra = 1 + rng() % 2;
    std::vector<PointId> G0, G;
    for (PointId x = 0; x < g0 + extra; ++x) {
      G.push_back(x);
      if (x < g0) G0.push_back(x);
    }
    auto maps = enumerate_katetov(amb.snapshot(G), G);
    std::vector<KatetovMap> family;
    std::size_t want = 1 + rng() % 3;
    for (int tries = 0; tries < 50 && family.size() < want; ++tries) {
      auto cand = family;
      cand.push_back(maps[rng() % maps.size()]);
      if (std::find(family.begin(), family.end(), cand.back()) != family.end()) continue;
      if (!red_hypothesis_violation(cand, G0)) family = cand;
    }
    auto C = lemma_red_copy(amb, kRootCopy, G0, G, family);
    bool ok = true;
    for (auto x : G) ok = ok && amb.is_member(C, x) == (std::find(G0.begin(), G0.end(), x) != G0.end());
    for (auto const& g : family) {
      for (auto y : amb.orbit_prefix(restrict(g, G0), C, 6)) {
        ok = ok && amb.realizes(y, g);
        ++transfers;
      }
    }
    ok = ok && audit_extension_property(amb, C, 1, 6, p).ok();
    red_bad += !ok;
    ++runs;
  }
  return {bad == 0 && red_bad == 0,
          fmt("10000 diagrams, %zu violations; %zu lemma_red runs, %zu transferred realizers, %zu violations",
              bad, runs, transfers, red_bad)};
}

Outcome dichotomy() {
  std::size_t cases = 0, bad = 0;
  for (int p = 1; p <= 4; ++p) {
    AmbientSpace amb(p, 60 + p);
    amb.grow_generic(2);
    std::vector<ColoringOracle> colorings{ColoringOracle::base_determined({}, {}, "a", {"a", "b"})};
    for (unsigned mask = 0; mask < (1u << p); ++mask) {
      std::map<std::vector<int>, std::string> table;
      for (int v = 1; v <= p; ++v)
        if (mask >> (v - 1) & 1) table[{v}] = "b";
      colorings.push_back(ColoringOracle::base_determined({0}, table, "a", {"a", "b"}));
    }
    std::vector<KatetovMap> maps{KatetovMap({0}, {Rational(p)}),
                                 KatetovMap({0, 1}, {Rational(p), Rational(p)})};
    for (auto const& c : colorings)
      for (auto const& f : maps)
        for (ColorId g = 0; g < 2; ++g) {
          Pair s{f, kRootCopy};
          bool large = is_large(amb, c, {g}, s).large;
          auto r = find_complement_large(amb, c, {g}, s);
          bool complement_side = !r.gamma_large && r.t && r.verified;
          bool complement_at_s = is_large(amb, c, complement({g}, 2), s).large;
          if (large == complement_side || (large && complement_at_s) || !r.conclusive) ++bad;
          ++cases;
        }
  }
  return {bad == 0, fmt("%zu (colouring, s, colour class) cases, %zu dichotomy violations", cases, bad)};
}

Outcome indivisibility() {
  std::size_t guaranteed = 0, guaranteed_ok = 0, best = 0, best_ok = 0;
  std::string first_failure;
  std::vector<std::string> palette3{"c0", "c1", "c2"};
  for (int p = 1; p <= 5; ++p) {
    std::mt19937_64 rng(700 + p);
    std::vector<std::pair<ColoringOracle, bool>> colorings;
    colorings.push_back({ColoringOracle::constant("c0"), true});
    colorings.push_back({ColoringOracle::constant("only"), true});
    for (int i = 0; i < 14; ++i) {
      std::size_t nb = 1 + i % 2, colors = 2 + i % 2;
      std::vector<PointId> base;
      for (std::size_t b = 0; b < nb; ++b) base.push_back(static_cast<PointId>(b));
      if (i % 4 == 3) {
        colorings.push_back({ColoringOracle::nearest_base(base, {palette3.begin(), palette3.begin() + nb}), true});
        continue;
      }
      std::map<std::vector<int>, std::string> table;
      oracle::tuples(nb, p, [&](std::vector<int> const& v) { table[v] = palette3[rng() % colors]; });
      std::vector<std::string> pal(palette3.begin(), palette3.begin() + static_cast<std::ptrdiff_t>(colors));
      colorings.push_back({ColoringOracle::base_determined(base, table, pal[0], pal), true});
    }
    for (int i = 0; i < 4; ++i)
      colorings.push_back({ColoringOracle::hash_random(rng(), {"h0", "h1"}), false});

    for (std::size_t i = 0; i < colorings.size(); ++i) {
      auto const& [c, sure] = colorings[i];
      EngineConfig cfg;
      cfg.N = 100;
      bool ok = false;
      std::string why;
      try {
        auto run = monochromatic_copy(c, p, 9000 + 31 * static_cast<std::uint64_t>(p) + i, cfg);
        auto report = verify_certificate(run.cert, 2);
        ok = report.ok() && run.cert.orbit_prefix.size() >= 100;
        if (!ok) why = report.summary();
      } catch (std::exception const& e) {
        why = e.what();
      }
      if (sure) {
        ++guaranteed;
        guaranteed_ok += ok;
        if (!ok && first_failure.empty()) first_failure = fmt("p=%d colouring %zu: ", p, i) + why;
      } else {
        ++best;
        best_ok += ok;
      }
    }
  }
  auto detail = fmt("guaranteed %zu/%zu verified; best-effort hash-random %zu/%zu (%.0f%%)", guaranteed_ok,
                    guaranteed, best_ok, best, best ? 100.0 * best_ok / best : 0.0);
  if (!first_failure.empty()) detail += "; first failure " + first_failure;
  return {guaranteed_ok == guaranteed, detail};
}

Outcome fault_injection() {
  std::vector<Certificate> certs;
  for (int p = 2; p <= 4; ++p) {
    auto c = ColoringOracle::base_determined({0}, {{{1}, "x"}, {{p}, "x"}}, "y", {"x", "y"});
    EngineConfig cfg;
    cfg.N = 20;
    certs.push_back(monochromatic_copy(c, p, 80 + p, cfg).cert);
  }
  std::size_t rejected = 0, named = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto kind = static_cast<FaultKind>(i % 3);
    auto bad = inject_fault(certs[i % certs.size()], kind, i * 7919);
    auto r = verify_certificate(bad);
    rejected += !r.ok();
    FaultCode expect = kind == FaultKind::Color      ? FaultCode::WrongColor
                       : kind == FaultKind::Distance ? FaultCode::MetricInvalid
                                                     : FaultCode::DomainNotInCopy;
    named += r.has(expect);
  }
  bool clean = true;
  for (auto const& c : certs) clean = clean && verify_certificate(c).ok();
  return {rejected == 50 && named == 50 && clean,
          fmt("50 corrupted: %zu rejected, %zu with the expected fault name", rejected, named)};
}

Outcome bridge() {
  std::mt19937_64 rng(99);
  std::size_t built = 0, bad = 0;
  for (int i = 0; i < 100; ++i) {
    auto sample = random_rational_sample(1 + rng() % 8, 2 + static_cast<int>(rng() % 10), rng);
    for (int m = 2; m <= 4; ++m) {
      auto Y = build_Ym(sample, m);
      bad += !validate_metric(Y.full).ok() || !eps_cover_check(Y).ok;
      ++built;
    }
  }
  std::size_t demos = 0, demo_ok = 0;
  for (int i = 0; i < 3; ++i) {
    auto sample = random_rational_sample(12, 4 + i, rng);
    std::vector<std::string> colors;
    for (int k = 0; k < 12; ++k) colors.push_back(rng() % 2 ? "red" : "blue");
    EngineConfig cfg;
    cfg.N = 20;
    auto r = eps_mono_demo(sample, colors, 2, 500 + static_cast<std::uint64_t>(i), cfg);
    demo_ok += r.verification.ok() && r.cover_confirmed;
    ++demos;
  }
  return {bad == 0 && demo_ok == demos,
          fmt("%zu two-level spaces, %zu failures; eps-mono demos %zu/%zu verified with cover", built, bad,
              demo_ok, demos)};
}

Outcome triangle_increment() {
  std::size_t triangles = 0, bad = 0;
  auto tri = [](int a, int b, int c) { return a <= b + c && b <= a + c && c <= a + b; };
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b)
      for (int c = 1; c <= 6; ++c) {
        if (!tri(a, b, c)) continue;
        ++triangles;
        int top = std::max({a, b, c});
        if (a < top) bad += !tri(a + 1, b, c);
        if (b < top) bad += !tri(a, b + 1, c);
        if (c < top) bad += !tri(a, b, c + 1);
      }
  return {bad == 0, fmt("%zu triangles, %zu counterexamples", triangles, bad)};
}

}  // namespace

int main() {
  criterion(1, "katetov oracle equivalence", 10, katetov_equivalence);
  criterion(2, "enumeration counts", 30, enumeration_counts);
  criterion(3, "extension property", 60, extension_property);
  criterion(4, "orbit type", 120, orbit_type);
  criterion(5, "amalgamation validity", 120, amalgamation);
  criterion(6, "largeness dichotomy", 120, dichotomy);
  criterion(7, "end-to-end indivisibility", 600, indivisibility);
  criterion(8, "fault injection", 30, fault_injection);
  criterion(9, "bridge", 120, bridge);
  criterion(10, "triangle increment", 1, triangle_increment);
  std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
