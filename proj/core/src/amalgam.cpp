#include "forge/amalgam.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace forge {

namespace {

void check_embedding(FiniteMetricSpace const& shared, FiniteMetricSpace const& target,
                     std::map<PointId, PointId> const& embed, char const* side) {
  std::string s = side;
  if (embed.size() != shared.size()) throw Error(s + " embedding is not total on the shared part");
  std::set<PointId> seen;
  for (auto const& [z, y] : embed) {
    if (!shared.contains(z)) throw Error(s + " embedding maps unknown shared point " + std::to_string(z));
    if (!target.contains(y)) throw Error(s + " embedding hits unknown point " + std::to_string(y));
    if (!seen.insert(y).second) throw Error(s + " embedding is not injective");
  }
  for (auto const& [a, ya] : embed)
    for (auto const& [b, yb] : embed)
      if (shared.distance(a, b) != target.distance(ya, yb))
        throw Error(s + " embedding does not preserve d(" + std::to_string(a) + "," + std::to_string(b) + ")");
}

}  // namespace

void check_diagram(AmalgamDiagram const& d) {
  if (!(d.left.spec() == d.shared.spec()) || !(d.right.spec() == d.shared.spec()))
    throw Error("amalgam components use different distance specs");
  check_embedding(d.shared, d.left, d.embed_left, "left");
  check_embedding(d.shared, d.right, d.embed_right, "right");
}

Amalgam strong_amalgamate(AmalgamDiagram const& d) {
  check_diagram(d);
  Amalgam out{d.left, {}, {}};
  auto const cap = d.left.spec().cap();

  std::map<PointId, PointId> shared_of_right;
  for (auto const& [z, y] : d.embed_right) shared_of_right[y] = z;

  PointId next = 0;
  for (auto x : d.left.points()) {
    out.left_to_w[x] = x;
    next = std::max(next, x + 1);
  }
  std::vector<PointId> right_only;
  for (auto y : d.right.points()) {
    auto it = shared_of_right.find(y);
    if (it != shared_of_right.end()) {
      out.right_to_w[y] = d.embed_left.at(it->second);
    } else {
      out.right_to_w[y] = next++;
      right_only.push_back(y);
    }
  }

  auto const nl = d.left.size();
  auto const n = nl + right_only.size();
  std::vector<PointId> ids = d.left.points();
  for (auto y : right_only) ids.push_back(out.right_to_w[y]);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j) m[i][j] = d.left.at(i, j);
  for (std::size_t a = 0; a < right_only.size(); ++a)
    for (std::size_t b = 0; b < right_only.size(); ++b)
      m[nl + a][nl + b] = d.right.distance(right_only[a], right_only[b]);
  for (std::size_t i = 0; i < nl; ++i) {
    auto x = d.left.points()[i];
    for (std::size_t a = 0; a < right_only.size(); ++a) {
      Rational best = cap;
      for (auto const& [z, lz] : d.embed_left) {
        auto path = d.left.distance(x, lz) + d.right.distance(d.embed_right.at(z), right_only[a]);
        best = std::min(best, path);
      }
      m[i][nl + a] = m[nl + a][i] = best;
    }
  }
  out.space = FiniteMetricSpace(d.left.spec(), std::move(ids), std::move(m));
  auto report = validate_metric(out.space);
  if (!report.ok()) throw Error("internal: strong amalgam violates the metric axioms: " + report.summary());
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> red_hypothesis_violation(
    std::vector<KatetovMap> const& family, std::vector<PointId> const& G0) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i; j < family.size(); ++j) {
      auto const& g = family[i];
      auto const& h = family[j];
      Rational max_all(0), max_0(0);
      Rational min_all(std::numeric_limits<std::int32_t>::max()), min_0 = min_all;
      for (auto x : g.domain) {
        auto diff = g.at(x) > h.at(x) ? g.at(x) - h.at(x) : h.at(x) - g.at(x);
        auto sum = g.at(x) + h.at(x);
        max_all = std::max(max_all, diff);
        min_all = std::min(min_all, sum);
        if (std::find(G0.begin(), G0.end(), x) != G0.end()) {
          max_0 = std::max(max_0, diff);
          min_0 = std::min(min_0, sum);
        }
      }
      if (max_all != max_0 || min_all != min_0) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

CopyId lemma_red_copy(AmbientSpace& ambient, CopyId parent, std::vector<PointId> const& G0,
                      std::vector<PointId> const& G, std::vector<KatetovMap> family,
                      std::string label) {
  std::set<PointId> gset(G.begin(), G.end());
  for (auto x : G0)
    if (!gset.count(x)) throw Error("G0 is not a subset of G");
  for (auto x : G)
    if (!ambient.is_member(parent, x)) throw Error("point " + std::to_string(x) + " of G is outside the parent copy");

  std::vector<KatetovMap> unique;
  for (auto& g : family) {
    if (std::set<PointId>(g.domain.begin(), g.domain.end()) != gset)
      throw Error("family map domain differs from G");
    auto canon = restrict(g, G);
    if (std::find(unique.begin(), unique.end(), canon) == unique.end()) unique.push_back(std::move(canon));
  }
  for (auto const& g : unique) {
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        auto d = Rational(ambient.distance(g.domain[i], g.domain[j]));
        auto diff = g.values[i] > g.values[j] ? g.values[i] - g.values[j] : g.values[j] - g.values[i];
        if (diff > d || d > g.values[i] + g.values[j]) throw Error("family map is not Katetov over G");
      }
  }
  if (auto bad = red_hypothesis_violation(unique, G0)) {
    throw RedHypothesisError("max/min hypothesis fails for family maps " + std::to_string(bad->first) +
                                 " and " + std::to_string(bad->second),
                             bad->first, bad->second);
  }

  std::vector<KatetovMap> seen_restrictions;
  for (auto const& g : unique) {
    auto r = restrict(g, G0);
    if (std::find(seen_restrictions.begin(), seen_restrictions.end(), r) != seen_restrictions.end())
      throw Error("internal: restriction to G0 is not one-to-one on the family");
    seen_restrictions.push_back(std::move(r));
  }
  std::vector<PointId> excluded;
  for (auto x : G)
    if (std::find(G0.begin(), G0.end(), x) == G0.end()) excluded.push_back(x);

  // peel the excluded points off one at a time: the i-th is pinned over G0 and the
  // excluded points still to come
  std::vector<TransferRule> rules;
  for (std::size_t i = 0; i < excluded.size(); ++i) {
    TransferRule rule;
    rule.target = excluded[i];
    rule.over = G0;
    rule.over.insert(rule.over.end(), excluded.begin() + static_cast<std::ptrdiff_t>(i) + 1, excluded.end());
    for (auto x : rule.over) rule.over_target.push_back(ambient.distance(x, rule.target));
    for (auto const& g : unique) {
      std::vector<int> vals;
      for (auto x : rule.over) vals.push_back(g.int_at(x));
      rule.family.push_back(std::move(vals));
      rule.family_target.push_back(g.int_at(rule.target));
    }
    rules.push_back(std::move(rule));
  }
  return ambient.new_copy(parent, G0, std::move(excluded), {}, std::move(rules), std::move(label));
}

namespace {

KatetovMap const& owner(AmbientSpace const& ambient, std::vector<KatetovMap> const& family,
                        std::vector<PointId> const& G0, PointId x) {
  for (auto const& g : family)
    if (ambient.realizes(x, restrict(g, G0))) return g;
  throw Error("point " + std::to_string(x) + " realizes no restricted family map");
}

bool katetov_in(AmbientSpace const& ambient, KatetovMap const& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      auto d = Rational(ambient.distance(f.domain[i], f.domain[j]));
      auto diff = f.values[i] > f.values[j] ? f.values[i] - f.values[j] : f.values[j] - f.values[i];
      if (diff > d || d > f.values[i] + f.values[j]) return false;
    }
  return true;
}

}  // namespace

Red1Result red1_fix_isometry(AmbientSpace& ambient, std::vector<PointId> const& G0, PointId z,
                             std::vector<KatetovMap> const& family,
                             std::vector<PointId> const& X) {
  if (auto bad = red_hypothesis_violation(family, G0))
    throw RedHypothesisError("max/min hypothesis fails", bad->first, bad->second);
  Red1Result out;
  for (auto a : G0) out.k.domain.push_back(a), out.k.values.emplace_back(ambient.distance(a, z));
  std::vector<KatetovMap const*> owners;
  for (auto x : X) {
    owners.push_back(&owner(ambient, family, G0, x));
    out.k.domain.push_back(x);
    out.k.values.push_back(owners.back()->at(z));
  }
  if (!katetov_in(ambient, out.k)) throw Error("the map k is not Katetov: upstream hypothesis breach");
  out.z_prime = ambient.realize(out.k);

  std::vector<PointId> fixed = G0;
  std::vector<std::size_t> moved;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (ambient.realizes(X[i], *owners[i])) {
      fixed.push_back(X[i]);
      out.image[X[i]] = X[i];
    } else {
      moved.push_back(i);
    }
  }
  std::vector<std::size_t> done;
  for (auto i : moved) {
    auto x = X[i];
    KatetovMap m;
    for (auto a : fixed) m.domain.push_back(a), m.values.emplace_back(ambient.distance(x, a));
    m.domain.push_back(z);
    m.values.emplace_back(ambient.distance(x, out.z_prime));
    for (auto j : done) {
      m.domain.push_back(out.image[X[j]]);
      m.values.emplace_back(ambient.distance(x, X[j]));
    }
    auto y = ambient.realize(m);
    if (!ambient.realizes(y, *owners[i])) throw Error("internal: red1 image left the full orbit");
    out.image[x] = y;
    done.push_back(i);
  }
  return out;
}

std::map<PointId, PointId> red2_embed(AmbientSpace& ambient, std::vector<PointId> const& G0,
                                      PointId z, std::vector<KatetovMap> const& family,
                                      std::vector<PointId> const& Y) {
  if (auto bad = red_hypothesis_violation(family, G0))
    throw RedHypothesisError("max/min hypothesis fails", bad->first, bad->second);
  std::map<PointId, PointId> image;
  std::vector<PointId> order;
  for (auto y : Y) {
    auto const& g = owner(ambient, family, G0, y);
    KatetovMap m;
    for (auto a : G0) m.domain.push_back(a), m.values.emplace_back(ambient.distance(y, a));
    m.domain.push_back(z);
    m.values.push_back(g.at(z));
    for (auto prev : order) {
      m.domain.push_back(image[prev]);
      m.values.emplace_back(ambient.distance(y, prev));
    }
    if (!katetov_in(ambient, m)) throw Error("red2 step map is not Katetov: upstream hypothesis breach");
    auto img = ambient.realize(m);
    if (!ambient.realizes(img, g)) throw Error("internal: red2 image left the full orbit");
    image[y] = img;
    order.push_back(y);
  }
  return image;
}

}  // namespace forge
