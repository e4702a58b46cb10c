#include "forge/json_io.hpp"

#include <algorithm>
#include <cstdio>

namespace forge {

Json rational_to_json(Rational const& r) {
  if (r.denominator() == 1) return r.numerator();
  return to_string(r);
}

Rational rational_from_json(Json const& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error("expected an integer or an \"a/b\" string, got " + j.dump());
}

Json spec_to_json(DistanceSpec const& spec) {
  switch (spec.kind) {
    case DistanceSpec::Kind::IntegerRange: return {{"kind", "integer-range"}, {"p", spec.param}};
    case DistanceSpec::Kind::RationalGrid: return {{"kind", "rational-grid"}, {"m", spec.param}};
    case DistanceSpec::Kind::RationalUnitInterval: return {{"kind", "rational-unit-interval"}};
  }
  return {};
}

DistanceSpec spec_from_json(Json const& j) {
  auto kind = j.at("kind").get<std::string>();
  std::replace(kind.begin(), kind.end(), '_', '-');
  if (kind == "integer-range") return DistanceSpec::integer_range(j.at("p").get<int>());
  if (kind == "rational-grid") return DistanceSpec::rational_grid(j.at("m").get<int>());
  if (kind == "rational-unit-interval" || kind == "unit-interval") return DistanceSpec::unit_interval();
  throw Error("unknown distance spec '" + kind + "'");
}

Json space_to_json(FiniteMetricSpace const& space) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < space.size(); ++j) row.push_back(rational_to_json(space.at(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"spec", spec_to_json(space.spec())}, {"points", space.points()}, {"dist", rows}};
}

FiniteMetricSpace space_from_json(Json const& j) {
  auto spec = spec_from_json(j.at("spec"));
  auto const& rows = j.contains("dist") ? j.at("dist") : j.at("distances");
  std::vector<PointId> points;
  if (j.contains("points")) {
    points = j.at("points").get<std::vector<PointId>>();
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) points.push_back(static_cast<PointId>(i));
  }
  if (rows.size() != points.size()) throw Error("distance matrix has " + std::to_string(rows.size()) + " rows for " + std::to_string(points.size()) + " points");
  std::vector<std::vector<Rational>> m;
  for (auto const& row : rows) {
    if (row.size() != points.size()) throw Error("distance matrix is not square");
    std::vector<Rational> r;
    for (auto const& v : row) r.push_back(rational_from_json(v));
    m.push_back(std::move(r));
  }
  return {spec, std::move(points), std::move(m)};
}

Json map_to_json(KatetovMap const& f) {
  Json vals = Json::array();
  for (auto const& v : f.values) vals.push_back(rational_to_json(v));
  return {{"domain", f.domain}, {"values", vals}};
}

KatetovMap map_from_json(Json const& j) {
  auto dom = j.at("domain").get<std::vector<PointId>>();
  std::vector<Rational> vals;
  for (auto const& v : j.at("values")) vals.push_back(rational_from_json(v));
  return {std::move(dom), std::move(vals)};
}

Json coloring_to_json(ColoringOracle const& c) {
  switch (c.kind()) {
    case ColoringOracle::Kind::Constant:
      return {{"kind", "constant"}, {"color", c.name(c.default_color())}};
    case ColoringOracle::Kind::HashRandom:
      return {{"kind", "hash_random"}, {"seed", c.seed()}, {"palette", c.palette()}};
    case ColoringOracle::Kind::BaseDetermined:
      break;
  }
  if (c.rule() == ColoringOracle::Rule::Nearest) {
    Json colors = Json::array();
    for (auto id : c.nearest_colors()) colors.push_back(c.name(id));
    return {{"kind", "nearest"}, {"base", c.base()}, {"colors", colors}};
  }
  Json table = Json::array();
  for (auto const& [dists, id] : c.table()) table.push_back({{"distances", dists}, {"color", c.name(id)}});
  return {{"kind", "table"}, {"base", c.base()}, {"table", table},
          {"default", c.name(c.default_color())}, {"palette", c.palette()}};
}

ColoringOracle coloring_from_json(Json const& j) {
  auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") return ColoringOracle::constant(j.at("color").get<std::string>());
  if (kind == "hash_random")
    return ColoringOracle::hash_random(j.at("seed").get<std::uint64_t>(), j.at("palette").get<std::vector<std::string>>());
  if (kind == "nearest")
    return ColoringOracle::nearest_base(j.at("base").get<std::vector<PointId>>(), j.at("colors").get<std::vector<std::string>>());
  if (kind == "table") {
    std::map<std::vector<int>, std::string> table;
    for (auto const& e : j.value("table", Json::array()))
      table[e.at("distances").get<std::vector<int>>()] = e.at("color").get<std::string>();
    return ColoringOracle::base_determined(j.at("base").get<std::vector<PointId>>(), std::move(table),
                                           j.at("default").get<std::string>(),
                                           j.value("palette", std::vector<std::string>{}));
  }
  throw Error("unknown colouring kind '" + kind + "'");
}

std::string coloring_family(ColoringOracle const& c) {
  switch (c.kind()) {
    case ColoringOracle::Kind::Constant: return "constant";
    case ColoringOracle::Kind::HashRandom: return "hash_random";
    case ColoringOracle::Kind::BaseDetermined: return c.rule() == ColoringOracle::Rule::Nearest ? "nearest" : "table";
  }
  return "unknown";
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

Json certificate_to_json(Certificate const& c) {
  return {
      {"schema", "forge-certificate"},
      {"version", c.version},
      {"p", c.p},
      {"seed", c.seed},
      {"coloring", coloring_to_json(c.coloring)},
      {"target", c.target},
      {"target_name", c.target < c.coloring.color_count() ? c.coloring.name(c.target) : "?"},
      {"pair", {{"f", map_to_json(c.f)}, {"copy", c.copy}}},
      {"copy_prefix", c.copy_prefix},
      {"orbit_prefix", c.orbit_prefix},
      {"orbit_colors", c.orbit_colors},
      {"snapshot", space_to_json(c.snapshot)},
      {"ambient_digest", hex64(c.ambient_digest)},
      {"audit", {{"k", c.audit_k}, {"n", c.audit_n}}},
  };
}

Certificate certificate_from_json(Json const& j) {
  if (j.value("schema", "") != "forge-certificate") throw Error("not a forge certificate");
  Certificate c;
  c.version = j.at("version").get<int>();
  if (c.version != kCertificateSchema)
    throw Error("unsupported certificate version " + std::to_string(c.version));
  c.p = j.at("p").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.coloring = coloring_from_json(j.at("coloring"));
  c.target = j.at("target").get<ColorId>();
  c.f = map_from_json(j.at("pair").at("f"));
  c.copy = j.at("pair").at("copy").get<CopyId>();
  c.copy_prefix = j.at("copy_prefix").get<std::vector<PointId>>();
  c.orbit_prefix = j.at("orbit_prefix").get<std::vector<PointId>>();
  c.orbit_colors = j.at("orbit_colors").get<std::vector<ColorId>>();
  c.snapshot = space_from_json(j.at("snapshot"));
  c.ambient_digest = std::stoull(j.at("ambient_digest").get<std::string>(), nullptr, 16);
  c.audit_k = j.at("audit").at("k").get<int>();
  c.audit_n = j.at("audit").at("n").get<std::size_t>();
  return c;
}

Json report_to_json(VerificationReport const& r) {
  Json faults = Json::array();
  for (auto const& f : r.faults)
    faults.push_back({{"code", to_string(f.code)}, {"points", f.points}, {"message", f.message}});
  return {{"ok", r.ok()}, {"orbit_checked", r.orbit_checked}, {"audit_demands", r.audit_demands},
          {"faults", faults}};
}

Json audit_to_json(AuditReport const& r) {
  Json unmet = Json::array();
  for (auto const& u : r.unmet) unmet.push_back({{"subset", u.subset}, {"values", u.values}});
  return {{"ok", r.ok()}, {"demands", r.demands}, {"met_existing", r.met_existing},
          {"met_by_growth", r.met_by_growth}, {"unmet", unmet}};
}

Json validation_to_json(ValidationReport const& r) {
  Json v = Json::array();
  for (auto const& x : r.violations) v.push_back({{"witnesses", x.witnesses}, {"message", x.message}});
  return {{"ok", r.ok()}, {"triangle_failures", r.triangle_failures}, {"violations", v}};
}

Json trace_to_json(TraceNode const& t) {
  Json j = {{"step", t.step}, {"min", t.min_value}, {"result", t.result}};
  if (!t.values.empty()) j["values"] = t.values;
  if (!t.children.empty()) {
    Json kids = Json::array();
    for (auto const& c : t.children) kids.push_back(trace_to_json(c));
    j["children"] = kids;
  }
  return j;
}

Json stats_to_json(EngineStats const& s, AmbientStats const& a) {
  return {{"backtracks", s.backtracks}, {"ind1_steps", s.ind1_steps}, {"ind1_forced", s.ind1_forced},
          {"ind2_steps", s.ind2_steps}, {"ind2_trivial", s.ind2_trivial}, {"corrections", s.corrections},
          {"largeness_checks", s.largeness_checks}, {"fresh_points", a.fresh}, {"reused_points", a.reused},
          {"discarded_points", a.discarded}, {"search_nodes", a.search_nodes}};
}

Json engine_config_to_json(EngineConfig const& c) {
  return {{"N", c.N},
          {"backtrack_limit", c.backtrack_limit},
          {"audit_k", c.audit_k},
          {"audit_n", c.audit_n},
          {"fold_limit", c.fold_limit},
          {"faithful_steps", c.faithful_steps},
          {"check_claims", c.check_claims},
          {"largeness",
           {{"mode", c.largeness.mode == LargenessConfig::Mode::Exact ? "exact" : "bounded"},
            {"witness_budget", c.largeness.witness_budget},
            {"orbit_sample", c.largeness.orbit_sample},
            {"depth_cap", c.largeness.depth_cap}}}};
}

EngineConfig engine_config_from_json(Json const& j, EngineConfig c) {
  c.N = j.value("N", c.N);
  c.backtrack_limit = j.value("backtrack_limit", c.backtrack_limit);
  c.audit_k = j.value("audit_k", c.audit_k);
  c.audit_n = j.value("audit_n", c.audit_n);
  c.fold_limit = j.value("fold_limit", c.fold_limit);
  c.faithful_steps = j.value("faithful_steps", c.faithful_steps);
  c.check_claims = j.value("check_claims", c.check_claims);
  if (j.contains("largeness")) {
    auto const& l = j.at("largeness");
    auto mode = l.value("mode", std::string("exact"));
    if (mode != "exact" && mode != "bounded") throw Error("largeness mode must be exact or bounded");
    c.largeness.mode = mode == "exact" ? LargenessConfig::Mode::Exact : LargenessConfig::Mode::Bounded;
    c.largeness.witness_budget = l.value("witness_budget", c.largeness.witness_budget);
    c.largeness.orbit_sample = l.value("orbit_sample", c.largeness.orbit_sample);
    c.largeness.depth_cap = l.value("depth_cap", c.largeness.depth_cap);
  }
  if (c.N < 1) throw Error("N must be at least 1");
  return c;
}

Json eps_report_to_json(EpsMonoReport const& r) {
  return {{"m", r.Y.m},
          {"two_level", space_to_json(r.Y.full)},
          {"target", r.target},
          {"target_name", r.run.cert.coloring.name(r.target)},
          {"covered_top_points", r.covered},
          {"cover_confirmed", r.cover_confirmed},
          {"certificate", certificate_to_json(r.run.cert)},
          {"verification", report_to_json(r.verification)},
          {"cross_level", r.completion}};
}

}  // namespace forge
