#include "forge/ambient.hpp"

#include <algorithm>
#include <functional>

namespace forge {

namespace {

int int_value(Rational const& r) {
  if (r.denominator() != 1) throw Error("non-integer value " + to_string(r) + " in ambient map");
  return static_cast<int>(r.numerator());
}

template <typename Fn>
void for_each_subset(std::vector<PointId> const& pool, int k, Fn&& fn) {
  std::vector<PointId> current;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!current.empty()) fn(current);
    if (static_cast<int>(current.size()) == k) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      current.push_back(pool[i]);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
}

KatetovMap merge(KatetovMap const& a, KatetovMap const& b) {
  auto out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out = out.with(b.domain[i], b.values[i]);
  return out;
}

}  // namespace

AmbientSpace::AmbientSpace(int p, std::uint64_t seed) : AmbientSpace(p, seed, true) {}

AmbientSpace::AmbientSpace(int p, std::uint64_t seed, bool with_initial_point)
    : p_(p), seed_(seed), rng_(seed) {
  if (p < 1) throw Error("p must be at least 1");
  if (p > 250) throw Error("p too large for the ambient's byte matrix");
  copies_.emplace_back();
  copies_[0].label = "root";
  if (with_initial_point) append_point({}, kRootCopy);
}

AmbientSpace AmbientSpace::from_space(FiniteMetricSpace const& seed_space, std::uint64_t seed) {
  if (seed_space.spec().kind != DistanceSpec::Kind::IntegerRange)
    throw Error("ambient seed space must be integer-range");
  auto report = validate_metric(seed_space);
  if (!report.ok()) throw Error("ambient seed space invalid: " + report.summary());
  AmbientSpace out(seed_space.spec().param, seed, false);
  for (std::size_t i = 0; i < seed_space.size(); ++i) {
    std::vector<int> row;
    for (std::size_t j = 0; j < i; ++j) row.push_back(int_value(seed_space.at(i, j)));
    out.append_point(row, kRootCopy);
  }
  if (out.size() == 0) out.append_point({}, kRootCopy);
  return out;
}

int AmbientSpace::distance(PointId x, PointId y) const {
  if (x >= size() || y >= size()) throw Error("unknown point id " + std::to_string(std::max(x, y)));
  if (x == y) return 0;
  if (x < y) std::swap(x, y);
  return rows_[x][y];
}

bool AmbientSpace::realizes(PointId y, KatetovMap const& f) const {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.domain[i] == y) return false;
    if (Rational(distance(y, f.domain[i])) != f.values[i]) return false;
  }
  return true;
}

FiniteMetricSpace AmbientSpace::snapshot() const {
  std::vector<PointId> ids(size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<PointId>(i);
  return snapshot(ids);
}

FiniteMetricSpace AmbientSpace::snapshot(std::span<PointId const> ids) const {
  std::vector<std::vector<Rational>> m(ids.size(), std::vector<Rational>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j < ids.size(); ++j) m[i][j] = distance(ids[i], ids[j]);
  return {DistanceSpec::integer_range(p_), {ids.begin(), ids.end()}, std::move(m)};
}

void AmbientSpace::set_coloring(ColoringOracle oracle) {
  for (auto b : oracle.base())
    if (b >= size()) throw Error("base point " + std::to_string(b) + " does not exist yet");
  oracle_ = std::move(oracle);
  colors_.clear();
  for (PointId x = 0; x < size(); ++x) colors_.push_back(color_of(*oracle_, *this, x));
}

ColorId AmbientSpace::color(PointId x) const {
  if (!oracle_) throw Error("ambient has no colouring");
  return colors_.at(x);
}

std::vector<CopyId> AmbientSpace::chain(CopyId c) const {
  std::vector<CopyId> out;
  std::optional<CopyId> cur = c;
  while (cur) {
    out.push_back(*cur);
    cur = copies_.at(*cur).parent;
  }
  return out;
}

bool AmbientSpace::is_subcopy(CopyId child, CopyId ancestor) const {
  auto ch = chain(child);
  return std::find(ch.begin(), ch.end(), ancestor) != ch.end();
}

int TransferRule::forced(std::span<int const> tau, int p) const {
  int best = p;
  for (std::size_t i = 0; i < over.size(); ++i) best = std::min(best, tau[i] + over_target[i]);
  for (std::size_t k = 0; k < family.size(); ++k) {
    auto const& g = family[k];
    if (std::equal(g.begin(), g.end(), tau.begin())) return family_target[k];
    int t = 1;
    for (std::size_t i = 0; i < g.size(); ++i) t = std::max(t, std::abs(g[i] - tau[i]));
    best = std::min(best, t + family_target[k]);
  }
  return best;
}

bool AmbientSpace::obeys_rules(CopyData const& c, PointId x) const {
  if (std::find(c.excluded.begin(), c.excluded.end(), x) != c.excluded.end()) return false;
  for (auto const& r : c.color_rules)
    if (realizes(x, r.orbit) && !contains(r.allowed, color(x))) return false;
  std::vector<int> tau;
  for (auto const& r : c.transfer_rules) {
    if (x == r.target || std::find(r.over.begin(), r.over.end(), x) != r.over.end()) continue;
    tau.clear();
    for (auto y : r.over) tau.push_back(distance(x, y));
    if (distance(x, r.target) != r.forced(tau, p_)) return false;
  }
  return true;
}

bool AmbientSpace::eligible(CopyId c, PointId x) const {
  auto const& data = copies_.at(c);
  if (!data.parent || data.has(x)) return false;
  if (!copies_[*data.parent].has(x)) return false;
  return obeys_rules(data, x);
}

void AmbientSpace::admit(CopyId c, PointId x) {
  if (copies_.at(c).has(x)) return;
  if (!eligible(c, x)) throw Error("point " + std::to_string(x) + " may not join copy " + std::to_string(c));
  auto& data = copies_[c];
  if (data.flags.size() <= x) data.flags.resize(x + 1, 0);
  data.flags[x] = 1;
  data.members.push_back(x);
}

CopyId AmbientSpace::new_copy(CopyId parent, std::vector<PointId> initial,
                              std::vector<PointId> excluded, std::vector<ColorRule> color_rules,
                              std::vector<TransferRule> transfer_rules, std::string label) {
  if (parent >= copies_.size()) throw Error("unknown parent copy");
  CopyData data;
  data.parent = parent;
  data.excluded = std::move(excluded);
  data.color_rules = std::move(color_rules);
  data.transfer_rules = std::move(transfer_rules);
  data.label = std::move(label);
  if ((!data.color_rules.empty()) && !oracle_) throw Error("colour rules need a colouring");
  copies_.push_back(std::move(data));
  CopyId id = static_cast<CopyId>(copies_.size() - 1);
  for (auto x : initial) {
    if (copies_[id].has(x)) continue;
    if (!eligible(id, x)) {
      auto name = copies_.back().label;
      copies_.pop_back();
      throw Error("initial point " + std::to_string(x) + " violates the rules of copy '" + name + "'");
    }
    admit(id, x);
  }
  return id;
}

PointId AmbientSpace::append_point(std::vector<int> const& row, CopyId within) {
  PointId id = static_cast<PointId>(rows_.size());
  std::vector<std::uint8_t> r(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) r[i] = static_cast<std::uint8_t>(row[i]);
  rows_.push_back(std::move(r));
  for (auto c : chain(within)) {
    auto& data = copies_[c];
    if (data.flags.size() <= id) data.flags.resize(id + 1, 0);
    data.flags[id] = 1;
    data.members.push_back(id);
  }
  if (oracle_) colors_.push_back(color_of(*oracle_, *this, id));
  return id;
}

PointId AmbientSpace::realize(KatetovMap const& f, RealizeOptions const& options) {
  auto const& within = copies_.at(options.within);
  for (std::size_t i = 0; i < f.size(); ++i) {
    int v = int_value(f.values[i]);
    if (v < 1 || v > p_) throw Error("value " + std::to_string(v) + " outside {1.." + std::to_string(p_) + "}");
    if (!within.has(f.domain[i]))
      throw Error("point " + std::to_string(f.domain[i]) + " not in copy '" + within.label + "'");
    for (std::size_t j = 0; j < i; ++j) {
      int w = int_value(f.values[j]);
      int d = distance(f.domain[i], f.domain[j]);
      if (std::abs(v - w) > d || d > v + w) throw Error("map is not Katetov over its domain");
    }
  }
  if (options.allowed_colors && !oracle_) throw Error("colour constraint without a colouring");

  std::vector<PointId> avoid = options.avoid;
  std::sort(avoid.begin(), avoid.end());
  auto usable = [&](PointId y) {
    if (std::binary_search(avoid.begin(), avoid.end(), y)) return false;
    if (!realizes(y, f)) return false;
    return !options.allowed_colors || contains(*options.allowed_colors, color(y));
  };

  if (!options.fresh_only) {
    for (auto y : within.members) {
      if (usable(y)) {
        ++stats_.reused;
        return y;
      }
    }
    if (within.parent) {
      auto const& parent = copies_[*within.parent].members;
      for (std::size_t i = 0; i < parent.size(); ++i) {
        auto y = parent[i];
        if (within.has(y) || !usable(y) || !obeys_rules(within, y)) continue;
        admit(options.within, y);
        ++stats_.reused;
        return y;
      }
    }
  }

  for (std::size_t attempt = 0; attempt <= options.max_discards; ++attempt) {
    if (auto y = create_fresh(f, options)) {
      if (!realizes(*y, f)) throw Error("internal: fresh point does not realize its map");
      ++stats_.fresh;
      return *y;
    }
  }
  throw RealizationFailure("no realizer found after " + std::to_string(options.max_discards) +
                           " discarded points");
}

std::optional<PointId> AmbientSpace::create_fresh(KatetovMap const& f, RealizeOptions const& options) {
  PointId const id = static_cast<PointId>(size());
  std::vector<int> val(id, 0);
  for (std::size_t i = 0; i < f.size(); ++i) val[f.domain[i]] = int_value(f.values[i]);

  std::vector<ColorRule const*> colour_rules;
  std::vector<TransferRule const*> transfers;
  auto const lineage = chain(options.within);
  for (auto c : lineage) {
    for (auto const& r : copies_[c].color_rules) colour_rules.push_back(&r);
    for (auto const& r : copies_[c].transfer_rules) transfers.push_back(&r);
  }
  ColorSet const* allowed = options.allowed_colors ? &*options.allowed_colors : nullptr;

  bool const colour_matters = allowed || !colour_rules.empty();
  bool const hashed = oracle_ && oracle_->kind() == ColoringOracle::Kind::HashRandom;
  std::vector<PointId> base;
  if (colour_matters && oracle_ && oracle_->kind() == ColoringOracle::Kind::BaseDetermined) base = oracle_->base();

  // free distances: every point some rule looks at, ordered so that a transfer target
  // comes after the points its distance is computed from
  std::vector<std::vector<TransferRule const*>> pinned(id);
  std::vector<PointId> seen;
  auto note = [&](PointId x) {
    if (x >= id) throw Error("rule refers to unknown point");
    if (val[x] == 0) seen.push_back(x);
  };
  for (auto r : colour_rules)
    for (auto x : r->orbit.domain) note(x);
  for (auto r : transfers) {
    for (auto x : r->over) note(x);
    note(r->target);
    pinned[r->target].push_back(r);
  }
  for (auto b : base) note(b);
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());

  std::vector<PointId> vars;
  std::vector<char> state(id, 0);  // 1 visiting, 2 placed
  std::function<void(PointId)> place = [&](PointId x) {
    if (state[x] || val[x] != 0) return;
    state[x] = 1;
    for (auto r : pinned[x])
      for (auto y : r->over) place(y);
    state[x] = 2;
    vars.push_back(x);
  };
  for (auto x : seen) place(x);

  std::vector<int> pos(id, -1);
  for (std::size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = static_cast<int>(i);
  auto last_of = [&](std::vector<PointId> const& pts, int from) {
    for (auto x : pts) from = std::max(from, pos[x]);
    return from;
  };
  int const base_ready = last_of(base, -1);
  // ready[i]: colour checks decidable once vars[i] (or nothing, at -1) is assigned
  std::vector<std::vector<std::pair<KatetovMap const*, ColorSet const*>>> ready(vars.size() + 1);
  for (auto r : colour_rules) ready[last_of(r->orbit.domain, base_ready) + 1].push_back({&r->orbit, &r->allowed});
  if (allowed) ready[base_ready + 1].push_back({nullptr, allowed});
  std::vector<std::vector<TransferRule const*>> settled(vars.size() + 1);
  for (auto r : transfers) settled[std::max(last_of(r->over, -1), pos[r->target]) + 1].push_back(r);

  auto colour_now = [&]() -> ColorId {
    if (hashed || oracle_->kind() == ColoringOracle::Kind::Constant) return oracle_->color_for({}, id);
    std::vector<int> dists;
    for (auto b : oracle_->base()) dists.push_back(val[b]);
    return oracle_->color_for(dists, id);
  };
  auto matches = [&](KatetovMap const& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (Rational(val[m.domain[i]]) != m.values[i]) return false;
    return true;
  };
  std::vector<int> tau;
  auto forced_for = [&](TransferRule const& r) {
    tau.clear();
    for (auto x : r.over) tau.push_back(val[x]);
    return r.forced(tau, p_);
  };
  auto checks_at = [&](int idx) {
    for (auto [orbit, set] : ready[idx + 1])
      if ((!orbit || matches(*orbit)) && !contains(*set, colour_now())) return false;
    for (auto r : settled[idx + 1])
      if (val[r->target] != forced_for(*r)) return false;
    return true;
  };

  std::vector<PointId> assigned = f.domain;
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == vars.size()) return true;
    if (++nodes > options.node_limit)
      throw RealizationFailure("assignment search budget exhausted in copy '" + copies_[options.within].label +
                               "' (" + std::to_string(vars.size()) + " free distances, " +
                               std::to_string(colour_rules.size() + transfers.size()) + " rules)");
    PointId y = vars[i];
    int lo = 1, hi = p_;
    for (auto x : assigned) {
      int a = val[x], d = distance(x, y);
      lo = std::max({lo, a - d, d - a});
      hi = std::min(hi, a + d);
    }
    if (!pinned[y].empty()) {
      int const want = forced_for(*pinned[y].front());
      if (want < lo || want > hi) return false;
      lo = hi = want;
    }
    assigned.push_back(y);
    for (int v = hi; v >= lo; --v) {
      val[y] = v;
      if (checks_at(static_cast<int>(i)) && search(i + 1)) return true;
    }
    val[y] = 0;
    assigned.pop_back();
    return false;
  };

  bool found = checks_at(-1) && search(0);
  stats_.search_nodes += nodes;

  std::vector<PointId> anchor = found ? assigned : f.domain;
  std::vector<int> row(id);
  for (PointId y = 0; y < id; ++y) {
    if (found && val[y] != 0) {
      row[y] = val[y];
      continue;
    }
    int best = p_;
    for (auto x : anchor) best = std::min(best, (found ? val[x] : int_value(f.at(x))) + distance(x, y));
    row[y] = best;
  }
  if (!found) {
    if (!hashed) throw RealizationFailure("no admissible distances for a fresh point in copy '" +
                                          copies_[options.within].label + "'");
    // the hash colour of this id is wrong; the point exists outside the copy
    append_point(row, kRootCopy);
    ++stats_.discarded;
    return std::nullopt;
  }
  return append_point(row, options.within);
}

std::vector<PointId> AmbientSpace::orbit_prefix(KatetovMap const& f, CopyId within, std::size_t n) {
  std::vector<PointId> out;
  RealizeOptions opt;
  opt.within = within;
  while (out.size() < n) {
    opt.avoid = out;
    out.push_back(realize(f, opt));
  }
  return out;
}

void AmbientSpace::refill_batch() {
  batch_.clear();
  batch_pos_ = 0;
  PointId const x = static_cast<PointId>(cursor_point_++);
  for (int v = 1; v <= p_; ++v) batch_.emplace_back(std::vector<PointId>{x}, std::vector<Rational>{Rational(v)});
  for (PointId y = 0; y < x; ++y) {
    int d = distance(x, y);
    for (int a = 1; a <= p_; ++a)
      for (int b = 1; b <= p_; ++b)
        if (std::abs(a - b) <= d && d <= a + b)
          batch_.emplace_back(std::vector<PointId>{y, x}, std::vector<Rational>{Rational(a), Rational(b)});
  }
  std::shuffle(batch_.begin(), batch_.end(), rng_);
}

void AmbientSpace::grow_generic(std::size_t n) {
  if (size() == 0) append_point({}, kRootCopy);
  while (size() < n) {
    if (batch_pos_ >= batch_.size()) {
      if (cursor_point_ >= size()) break;
      refill_batch();
      continue;
    }
    realize(batch_[batch_pos_++]);
  }
}

std::uint64_t AmbientSpace::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(p_));
  mix(size());
  for (auto const& r : rows_)
    for (auto d : r) {
      h ^= d;
      h *= 1099511628211ULL;
    }
  return h;
}

int orbit_isometry_type(KatetovMap const& f, int p) {
  if (f.empty()) return p;
  return std::min(2 * f.int_min(), p);
}

namespace {

std::vector<KatetovMap> maps_over(std::vector<PointId> const& subset, int range,
                                  std::function<int(PointId, PointId)> const& dist) {
  std::vector<std::vector<Rational>> m(subset.size(), std::vector<Rational>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j) m[i][j] = i == j ? 0 : dist(subset[i], subset[j]);
  FiniteMetricSpace s(DistanceSpec::integer_range(range), subset, std::move(m));
  return enumerate_katetov(s, subset);
}

UnmetDemand unmet_of(KatetovMap const& g) {
  UnmetDemand u{g.domain, {}};
  for (auto const& v : g.values) u.values.push_back(static_cast<int>(v.numerator()));
  return u;
}

}  // namespace

AuditReport audit_extension_property(AmbientSpace& ambient, CopyId c, int k, std::size_t n,
                                     int range, bool grow) {
  if (k < 1) throw Error("audit depth must be at least 1");
  AuditReport report;
  auto const& mem = ambient.members(c);
  std::vector<PointId> targets(mem.begin(), mem.begin() + static_cast<std::ptrdiff_t>(std::min(n, mem.size())));
  auto dist = [&](PointId a, PointId b) { return ambient.distance(a, b); };
  for_each_subset(targets, k, [&](std::vector<PointId> const& S) {
    for (auto const& g : maps_over(S, range, dist)) {
      ++report.demands;
      bool met = false;
      for (auto y : ambient.members(c))
        if (ambient.realizes(y, g)) {
          met = true;
          break;
        }
      if (met) {
        ++report.met_existing;
        continue;
      }
      if (grow) {
        try {
          RealizeOptions opt;
          opt.within = c;
          ambient.realize(g, opt);
          ++report.met_by_growth;
          continue;
        } catch (RealizationFailure const&) {
        }
      }
      report.unmet.push_back(unmet_of(g));
    }
  });
  return report;
}

AuditReport audit_orbit(AmbientSpace& ambient, KatetovMap const& f, CopyId c, int k,
                        std::size_t n, int range, bool grow) {
  if (k < 1) throw Error("audit depth must be at least 1");
  AuditReport report;
  auto orbit = ambient.orbit_prefix(f, c, n);
  auto dist = [&](PointId a, PointId b) { return ambient.distance(a, b); };
  for_each_subset(orbit, k, [&](std::vector<PointId> const& S) {
    for (auto const& g : maps_over(S, range, dist)) {
      ++report.demands;
      auto both = merge(f, g);
      bool met = false;
      for (auto y : ambient.members(c))
        if (ambient.realizes(y, both)) {
          met = true;
          break;
        }
      if (met) {
        ++report.met_existing;
        continue;
      }
      if (grow) {
        try {
          RealizeOptions opt;
          opt.within = c;
          ambient.realize(both, opt);
          ++report.met_by_growth;
          continue;
        } catch (RealizationFailure const&) {
        }
      }
      report.unmet.push_back(unmet_of(g));
    }
  });
  return report;
}

AuditReport audit_static(FiniteMetricSpace const& space, std::span<PointId const> targets,
                         std::span<PointId const> candidates, int k, std::size_t n, int range) {
  if (k < 1) throw Error("audit depth must be at least 1");
  AuditReport report;
  std::vector<PointId> pool(targets.begin(), targets.begin() + static_cast<std::ptrdiff_t>(std::min(n, targets.size())));
  std::vector<std::size_t> cand_idx;
  for (auto y : candidates) cand_idx.push_back(space.index_of(y));
  auto dist = [&](PointId a, PointId b) {
    return static_cast<int>(space.distance(a, b).numerator());
  };
  for_each_subset(pool, k, [&](std::vector<PointId> const& S) {
    std::vector<std::size_t> sidx;
    for (auto x : S) sidx.push_back(space.index_of(x));
    for (auto const& g : maps_over(S, range, dist)) {
      ++report.demands;
      bool met = false;
      for (auto yi : cand_idx) {
        bool ok = true;
        for (std::size_t i = 0; i < S.size() && ok; ++i) ok = yi != sidx[i] && space.at(yi, sidx[i]) == g.values[i];
        if (ok) {
          met = true;
          break;
        }
      }
      if (met)
        ++report.met_existing;
      else
        report.unmet.push_back(unmet_of(g));
    }
  });
  return report;
}

}  // namespace forge
