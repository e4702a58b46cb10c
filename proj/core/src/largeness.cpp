#include "forge/largeness.hpp"

#include <algorithm>
#include <functional>

namespace forge {

void check_pair(AmbientSpace const& ambient, Pair const& s) {
  if (s.f.empty()) throw Error("pair map has an empty domain");
  if (s.copy >= ambient.copy_count()) throw Error("pair refers to an unknown copy");
  for (std::size_t i = 0; i < s.f.size(); ++i) {
    auto const& v = s.f.values[i];
    if (v.denominator() != 1 || v < 1 || v > ambient.p())
      throw Error("pair value " + to_string(v) + " outside {1.." + std::to_string(ambient.p()) + "}");
    if (!ambient.is_member(s.copy, s.f.domain[i]))
      throw Error("pair domain point " + std::to_string(s.f.domain[i]) + " outside its copy");
    for (std::size_t j = 0; j < i; ++j) {
      auto d = Rational(ambient.distance(s.f.domain[i], s.f.domain[j]));
      auto const& w = s.f.values[j];
      auto diff = v > w ? v - w : w - v;
      if (diff > d || d > v + w) throw Error("pair map is not Katetov");
    }
  }
}

bool refines(AmbientSpace const& ambient, Pair const& t, Pair const& s, int k) {
  if (t.f.empty() || s.f.empty()) return false;
  for (std::size_t i = 0; i < s.f.size(); ++i) {
    if (!t.f.defined_at(s.f.domain[i]) || t.f.at(s.f.domain[i]) != s.f.values[i]) return false;
  }
  for (auto x : t.f.domain)
    if (!ambient.is_member(t.copy, x)) return false;
  if (!ambient.is_subcopy(t.copy, s.copy)) return false;
  int const ms = s.f.int_min();
  int const expected = ms > k ? ms - k : 1;
  return t.f.int_min() == expected;
}

namespace {

constexpr PointId kAbstract = 0x80000000u;

bool is_abstract(PointId x) { return x >= kAbstract; }

struct Frame {
  std::vector<PointId> ids;
  std::vector<std::vector<int>> d;
  std::vector<char> pool;  // abstract point placed at distance p from everything
  PointId next = kAbstract;

  std::size_t index(PointId x) const {
    auto it = std::find(ids.begin(), ids.end(), x);
    if (it == ids.end()) throw Error("internal: point missing from largeness frame");
    return static_cast<std::size_t>(it - ids.begin());
  }
  int dist(PointId a, PointId b) const { return d[index(a)][index(b)]; }
  bool has(PointId x) const { return std::find(ids.begin(), ids.end(), x) != ids.end(); }

  void add_real(AmbientSpace const& amb, PointId x) {
    if (has(x)) return;
    std::vector<int> row;
    for (auto y : ids) row.push_back(amb.distance(x, y));
    push(x, row, false);
  }
  PointId add_abstract(std::vector<int> const& row, bool is_pool) {
    PointId x = next++;
    push(x, row, is_pool);
    return x;
  }
  void push(PointId x, std::vector<int> const& row, bool is_pool) {
    for (std::size_t i = 0; i < d.size(); ++i) d[i].push_back(row[i]);
    auto r = row;
    r.push_back(0);
    d.push_back(std::move(r));
    ids.push_back(x);
    pool.push_back(is_pool);
  }
};

bool katetov_on(Frame const& fr, KatetovMap const& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      int a = f.int_at(f.domain[i]), b = f.int_at(f.domain[j]);
      int dd = fr.dist(f.domain[i], f.domain[j]);
      if (std::abs(a - b) > dd || dd > a + b) return false;
    }
  return true;
}

struct Candidate {
  Frame frame;
  KatetovMap f;
};

using MemoKey = std::pair<std::vector<long long>, int>;

class Recursion {
 public:
  Recursion(AmbientSpace const& amb, ColoringOracle const& oracle, ColorSet gamma,
            LargenessConfig const& cfg)
      : amb_(amb), oracle_(oracle), gamma_(std::move(gamma)), cfg_(cfg), p_(amb.p()) {
    std::sort(gamma_.begin(), gamma_.end());
    exact_ = cfg.mode == LargenessConfig::Mode::Exact;
    if (exact_ && oracle.kind() == ColoringOracle::Kind::HashRandom)
      throw Error("exact largeness needs a constant or base-determined colouring");
    if (cfg.witness_budget < 0) throw Error("witness budget must be non-negative");
  }

  Frame frame_for(Pair const& s) const {
    Frame fr;
    for (auto x : s.f.domain) fr.add_real(amb_, x);
    if (!exact_)
      for (auto b : oracle_.base()) fr.add_real(amb_, b);
    return fr;
  }

  void require_base(KatetovMap const& f) const {
    if (!exact_) return;
    for (auto b : oracle_.base())
      if (!f.defined_at(b))
        throw Error("extend domain first: base point " + std::to_string(b) + " not in dom f_s");
  }

  std::vector<Candidate> ext0(Frame const& fr, KatetovMap const& f) const {
    std::vector<Candidate> out;
    out.push_back({fr, f});
    int const m = f.int_min();
    std::vector<Candidate> layer{{fr, f}};
    for (int j = 0; j < cfg_.witness_budget; ++j) {
      std::vector<Candidate> next;
      for (auto const& c : layer) {
        std::vector<int> row(c.frame.ids.size(), p_);
        for (int v = m; v <= p_; ++v) {
          Candidate n = c;
          auto w = n.frame.add_abstract(row, true);
          n.f = n.f.with(w, Rational(v));
          if (!katetov_on(n.frame, n.f)) continue;
          next.push_back(n);
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  std::vector<Candidate> ext1(Frame const& fr, KatetovMap const& f) const {
    std::vector<Candidate> out;
    int const m = f.int_min();
    int const target = m > 1 ? m - 1 : 1;
    {
      // a witness realizing f, placed by the envelope elsewhere
      Candidate c{fr, f};
      std::vector<int> row;
      for (auto y : fr.ids) {
        if (f.defined_at(y)) {
          row.push_back(f.int_at(y));
          continue;
        }
        int best = p_;
        for (auto x : f.domain) best = std::min(best, f.int_at(x) + fr.dist(x, y));
        row.push_back(best);
      }
      auto w = c.frame.add_abstract(row, false);
      c.f = c.f.with(w, Rational(target));
      if (katetov_on(c.frame, c.f)) out.push_back(std::move(c));
    }
    {
      Candidate c{fr, f};
      auto w = c.frame.add_abstract(std::vector<int>(fr.ids.size(), p_), true);
      c.f = c.f.with(w, Rational(target));
      if (katetov_on(c.frame, c.f)) out.push_back(std::move(c));
    }
    return out;
  }

  bool leaf(Frame const& fr, KatetovMap const& f) const {
    switch (oracle_.kind()) {
      case ColoringOracle::Kind::Constant:
        return contains(gamma_, oracle_.default_color());
      case ColoringOracle::Kind::HashRandom: {
        std::size_t const window = cfg_.orbit_sample * oracle_.color_count() * 4;
        std::size_t hits = 0;
        for (std::size_t i = 0; i < window; ++i)
          if (contains(gamma_, oracle_.color_for({}, static_cast<PointId>(amb_.size() + i)))) ++hits;
        return hits >= cfg_.orbit_sample;
      }
      case ColoringOracle::Kind::BaseDetermined:
        break;
    }
    std::vector<PointId> missing;
    for (auto b : oracle_.base())
      if (!f.defined_at(b)) missing.push_back(b);
    if (missing.empty()) {
      for (auto c : admissible_colors(oracle_, f))
        if (contains(gamma_, c)) return true;
      return false;
    }
    if (exact_) require_base(f);
    // bounded mode: any Katetov completion over the base can occur among realizers
    bool hit = false;
    std::vector<int> vals(missing.size(), 1);
    std::function<void(std::size_t, KatetovMap const&)> rec = [&](std::size_t i, KatetovMap const& g) {
      if (hit) return;
      if (i == missing.size()) {
        for (auto c : admissible_colors(oracle_, g))
          if (contains(gamma_, c)) hit = true;
        return;
      }
      for (int v = 1; v <= p_ && !hit; ++v) {
        auto h = g.with(missing[i], Rational(v));
        if (katetov_on(fr, h)) rec(i + 1, h);
      }
    };
    rec(0, f);
    return hit;
  }

  MemoKey key(KatetovMap const& f) const {
    std::vector<long long> k;
    if (exact_) {
      for (auto b : oracle_.base()) k.push_back(f.int_at(b));
    } else {
      std::vector<std::pair<PointId, int>> real;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (!is_abstract(f.domain[i])) real.emplace_back(f.domain[i], f.int_at(f.domain[i]));
      std::sort(real.begin(), real.end());
      for (auto const& [x, v] : real) {
        k.push_back(x);
        k.push_back(v);
      }
    }
    return {k, f.int_min()};
  }

  bool large(Frame const& fr, KatetovMap const& f, int depth, TraceNode& node) {
    ++evaluations;
    node.step = "large";
    node.min_value = f.int_min();
    for (auto const& v : f.values) node.values.push_back(static_cast<int>(v.numerator()));
    if (depth > cfg_.depth_cap) {
      if (!exact_) throw Error("largeness recursion depth exceeded");
    }
    auto k = key(f);
    if (auto it = memo_.find(k); it != memo_.end()) {
      ++memo_hits;
      node.step = "memo";
      node.result = it->second;
      return it->second;
    }
    bool result = true;
    if (f.int_min() == 1) {
      for (auto const& t : ext0(fr, f)) {
        TraceNode leaf_node;
        leaf_node.step = "leaf";
        leaf_node.min_value = 1;
        leaf_node.result = leaf(t.frame, t.f);
        node.children.push_back(leaf_node);
        if (!leaf_node.result) {
          result = false;
          break;
        }
      }
    } else {
      for (auto const& t : ext0(fr, f)) {
        TraceNode tn;
        tn.step = "t";
        tn.min_value = t.f.int_min();
        bool some = false;
        for (auto const& u : ext1(t.frame, t.f)) {
          TraceNode un;
          if (large(u.frame, u.f, depth + 1, un)) some = true;
          un.step = un.step == "memo" ? "memo" : "u";
          tn.children.push_back(std::move(un));
          if (some) break;
        }
        tn.result = some;
        node.children.push_back(std::move(tn));
        if (!some) {
          result = false;
          break;
        }
      }
    }
    memo_[k] = result;
    node.result = result;
    return result;
  }

  /// A t <=_0 s witnessing that the recursion fails at s.
  std::optional<Candidate> failing_t(Frame const& fr, KatetovMap const& f) {
    for (auto const& t : ext0(fr, f)) {
      if (f.int_min() == 1) {
        if (!leaf(t.frame, t.f)) return t;
        continue;
      }
      bool all_fail = true;
      for (auto const& u : ext1(t.frame, t.f)) {
        TraceNode scratch;
        if (large(u.frame, u.f, 1, scratch)) {
          all_fail = false;
          break;
        }
      }
      if (all_fail) return t;
    }
    return std::nullopt;
  }

  std::size_t evaluations = 0;
  std::size_t memo_hits = 0;
  bool exact() const { return exact_; }

 private:
  AmbientSpace const& amb_;
  ColoringOracle const& oracle_;
  ColorSet gamma_;
  LargenessConfig cfg_;
  int p_;
  bool exact_ = true;
  std::map<MemoKey, bool> memo_;
};

}  // namespace

LargenessResult is_large(AmbientSpace const& ambient, ColoringOracle const& oracle,
                         ColorSet const& gamma, Pair const& s, LargenessConfig const& cfg) {
  check_pair(ambient, s);
  Recursion rec(ambient, oracle, gamma, cfg);
  rec.require_base(s.f);
  LargenessResult out;
  auto fr = rec.frame_for(s);
  out.large = rec.large(fr, s.f, 0, out.trace);
  out.conclusive = rec.exact();
  out.evaluations = rec.evaluations;
  out.memo_hits = rec.memo_hits;
  return out;
}

ComplementResult find_complement_large(AmbientSpace& ambient, ColoringOracle const& oracle,
                                       ColorSet const& gamma, Pair const& s,
                                       LargenessConfig const& cfg) {
  ComplementResult out;
  auto first = is_large(ambient, oracle, gamma, s, cfg);
  out.conclusive = first.conclusive;
  if (first.large) {
    out.gamma_large = true;
    return out;
  }
  Recursion rec(ambient, oracle, gamma, cfg);
  auto fr = rec.frame_for(s);
  auto t = rec.failing_t(fr, s.f);
  if (!t) {
    out.conclusive = false;
    return out;
  }

  // materialize the pool witnesses inside C_s
  Pair real{{}, s.copy};
  std::map<PointId, PointId> rename_to;
  std::vector<PointId> placed;
  for (auto x : s.f.domain) placed.push_back(x);
  for (std::size_t i = 0; i < t->frame.ids.size(); ++i) {
    auto x = t->frame.ids[i];
    if (!is_abstract(x) || !t->f.defined_at(x)) continue;
    if (!t->frame.pool[i]) throw Error("internal: non-pool witness in a <=_0 extension");
    KatetovMap demand;
    for (auto y : placed) demand = demand.with(y, Rational(ambient.p()));
    RealizeOptions opt;
    opt.within = s.copy;
    opt.avoid = placed;
    auto y = ambient.realize(demand, opt);
    rename_to[x] = y;
    placed.push_back(y);
  }
  for (std::size_t i = 0; i < t->f.size(); ++i) {
    auto x = t->f.domain[i];
    auto it = rename_to.find(x);
    real.f = real.f.with(it == rename_to.end() ? x : it->second, t->f.values[i]);
  }
  out.t = real;
  auto comp = complement(gamma, oracle.color_count());
  out.verified = refines(ambient, real, s, 0) && is_large(ambient, oracle, comp, real, cfg).large;
  return out;
}

}  // namespace forge
