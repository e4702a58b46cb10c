#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "forge/amalgam.hpp"
#include "forge/bridge.hpp"
#include "forge/json_io.hpp"
#include "forge/manifest.hpp"

using namespace forge;

namespace {

Json read_json(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return Json::parse(in);
}

Json parse_inline_or_file(std::string const& text) {
  if (!text.empty() && (text.front() == '{' || text.front() == '[')) return Json::parse(text);
  return read_json(text);
}

void emit(Json const& j, std::string const& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(1) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write " + out);
  f << j.dump(1) << '\n';
}

std::vector<PointId> parse_ids(std::string const& text) {
  std::vector<PointId> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) ids.push_back(static_cast<PointId>(std::stoul(item)));
  return ids;
}

std::map<PointId, PointId> parse_embedding(Json const& j) {
  std::map<PointId, PointId> m;
  for (auto const& pair : j) m[pair.at(0).get<PointId>()] = pair.at(1).get<PointId>();
  return m;
}

ColorSet parse_gamma(ColoringOracle const& oracle, std::string const& text) {
  ColorSet out;
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ','))
    if (!name.empty()) out.push_back(oracle.find(name));
  if (out.empty()) throw Error("empty colour class");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: lazy U_p ambients, largeness, and verified monochromatic orbit prefixes"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "ambient seed")->envname("FORGE_SEED");
  int exit_code = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "grow a generic prefix of U_p and print its distance matrix");
  int gen_p = 3;
  std::size_t gen_n = 20;
  std::string gen_out;
  gen->add_option("--p", gen_p, "distance bound")->required();
  gen->add_option("--n", gen_n, "number of points");
  gen->add_option("--seed", seed, "ambient seed")->envname("FORGE_SEED");
  gen->add_option("--out", gen_out, "output file");
  gen->callback([&] {
    AmbientSpace amb(gen_p, seed);
    amb.grow_generic(gen_n);
    std::vector<PointId> ids(gen_n);
    for (std::size_t i = 0; i < gen_n; ++i) ids[i] = static_cast<PointId>(i);
    emit(space_to_json(amb.snapshot(ids)), gen_out);
  });

  // validate
  auto* val = app.add_subcommand("validate", "check the metric axioms and the distance set");
  std::string val_in;
  val->add_option("space", val_in, "space JSON")->required();
  val->callback([&] {
    auto report = validate_metric(space_from_json(read_json(val_in)));
    emit(validation_to_json(report), "");
    if (!report.ok()) exit_code = 1;
  });

  // katetov enum
  auto* kat = app.add_subcommand("katetov", "Katetov maps over a finite space");
  kat->require_subcommand(1);
  auto* kenum = kat->add_subcommand("enum", "enumerate Katetov maps over a domain");
  std::string k_space, k_domain, k_min, k_fixed;
  bool k_count = false;
  kenum->add_option("--space", k_space, "space JSON")->required();
  kenum->add_option("--domain", k_domain, "comma-separated ids (default: all points)");
  kenum->add_option("--min", k_min, "lower bound on every value");
  kenum->add_option("--fixed", k_fixed, "map JSON (inline or file) the result must extend");
  kenum->add_flag("--count", k_count, "print only the count");
  kenum->callback([&] {
    auto space = space_from_json(read_json(k_space));
    auto domain = k_domain.empty() ? space.points() : parse_ids(k_domain);
    EnumerationConstraint c;
    if (!k_min.empty()) c.min_value = parse_rational(k_min);
    if (!k_fixed.empty()) c.fixed = map_from_json(parse_inline_or_file(k_fixed));
    if (k_count) {
      emit(Json{{"count", count_katetov(space, domain, c)}}, "");
      return;
    }
    Json maps = Json::array();
    for (auto const& f : enumerate_katetov(space, domain, c)) maps.push_back(map_to_json(f));
    emit(Json{{"count", maps.size()}, {"maps", maps}}, "");
  });

  // audit
  auto* aud = app.add_subcommand("audit", "extension-property audit of a generic ambient or a fixed space");
  int a_p = 3, a_k = 2;
  std::size_t a_n = 20;
  std::string a_space;
  bool a_static = false;
  aud->add_option("--p", a_p, "distance bound (generic ambient)");
  aud->add_option("--n", a_n, "prefix size to audit");
  aud->add_option("--k", a_k, "largest subset size");
  aud->add_option("--space", a_space, "audit this space instead (nothing grows)");
  aud->add_option("--seed", seed, "ambient seed")->envname("FORGE_SEED");
  aud->add_flag("--no-grow", a_static, "report unmet demands instead of growing realizers");
  aud->callback([&] {
    AuditReport report;
    if (!a_space.empty()) {
      auto space = space_from_json(read_json(a_space));
      if (space.spec().kind != DistanceSpec::Kind::IntegerRange) throw Error("audit needs an integer-range space");
      report = audit_static(space, space.points(), space.points(), a_k, a_n, space.spec().param);
    } else {
      AmbientSpace amb(a_p, seed);
      amb.grow_generic(a_n);
      report = audit_extension_property(amb, kRootCopy, a_k, a_n, a_p, !a_static);
    }
    emit(audit_to_json(report), "");
    if (!report.ok()) exit_code = 1;
  });

  // amalgamate
  auto* am = app.add_subcommand("amalgamate", "strong amalgam of two spaces over a shared part");
  std::string am_in, am_out;
  am->add_option("diagram", am_in, "{left, right, shared, embed_left, embed_right}")->required();
  am->add_option("--out", am_out, "output file");
  am->callback([&] {
    auto j = read_json(am_in);
    AmalgamDiagram d{space_from_json(j.at("left")), space_from_json(j.at("right")),
                     space_from_json(j.at("shared")), parse_embedding(j.at("embed_left")),
                     parse_embedding(j.at("embed_right"))};
    auto w = strong_amalgamate(d);
    Json lm = Json::array(), rm = Json::array();
    for (auto const& [a, b] : w.left_to_w) lm.push_back({a, b});
    for (auto const& [a, b] : w.right_to_w) rm.push_back({a, b});
    emit(Json{{"space", space_to_json(w.space)}, {"left_to_w", lm}, {"right_to_w", rm}}, am_out);
  });

  // color
  auto* col = app.add_subcommand("color", "colour every point of an integer-range space");
  std::string c_coloring, c_space;
  col->add_option("--coloring", c_coloring, "colouring JSON")->required();
  col->add_option("--space", c_space, "space JSON (points renumbered 0..n-1)")->required();
  col->add_option("--seed", seed, "ambient seed")->envname("FORGE_SEED");
  col->callback([&] {
    auto oracle = coloring_from_json(read_json(c_coloring));
    auto amb = AmbientSpace::from_space(space_from_json(read_json(c_space)), seed);
    amb.set_coloring(oracle);
    Json colors = Json::array();
    for (PointId x = 0; x < amb.size(); ++x) colors.push_back(oracle.name(amb.color(x)));
    emit(Json{{"colors", colors}}, "");
  });

  // large
  auto* lg = app.add_subcommand("large", "decide largeness of a colour class relative to a pair");
  int l_p = 3;
  std::size_t l_n = 8;
  std::string l_coloring, l_map, l_gamma, l_mode = "exact";
  bool l_trace = false, l_complement = false;
  lg->add_option("--p", l_p, "distance bound")->required();
  lg->add_option("--n", l_n, "generic prefix size before the pair is read");
  lg->add_option("--coloring", l_coloring, "colouring JSON")->required();
  lg->add_option("--f", l_map, "pair map JSON (inline or file), copy = the whole ambient")->required();
  lg->add_option("--gamma", l_gamma, "comma-separated colour names")->required();
  lg->add_option("--mode", l_mode, "exact or bounded")->check(CLI::IsMember({"exact", "bounded"}));
  lg->add_option("--seed", seed, "ambient seed")->envname("FORGE_SEED");
  lg->add_flag("--trace", l_trace, "include the witness tree");
  lg->add_flag("--complement", l_complement, "when not large, find t <=_0 s with the complement large");
  lg->callback([&] {
    auto oracle = coloring_from_json(read_json(l_coloring));
    AmbientSpace amb(l_p, seed);
    amb.grow_generic(l_n);
    amb.set_coloring(oracle);
    Pair s{map_from_json(parse_inline_or_file(l_map)), kRootCopy};
    LargenessConfig cfg;
    cfg.mode = l_mode == "exact" ? LargenessConfig::Mode::Exact : LargenessConfig::Mode::Bounded;
    auto gamma = parse_gamma(oracle, l_gamma);
    auto r = is_large(amb, oracle, gamma, s, cfg);
    Json out = {{"large", r.large}, {"conclusive", r.conclusive}, {"evaluations", r.evaluations},
                {"memo_hits", r.memo_hits}};
    if (l_trace) out["trace"] = trace_to_json(r.trace);
    if (l_complement && !r.large) {
      auto c = find_complement_large(amb, oracle, gamma, s, cfg);
      out["complement"] = {{"verified", c.verified}, {"conclusive", c.conclusive}};
      if (c.t) out["complement"]["t"] = map_to_json(c.t->f);
      if (!c.verified) exit_code = 1;
    }
    emit(out, "");
  });

  // run
  auto* run = app.add_subcommand("run", "build a certificate for a monochromatic orbit prefix");
  int r_p = 3;
  std::size_t r_n = 100;
  std::string r_coloring, r_config, r_out;
  bool r_trace = false;
  run->add_option("--p", r_p, "distance bound")->required();
  run->add_option("--coloring", r_coloring, "colouring JSON")->required();
  run->add_option("--n", r_n, "orbit prefix length");
  run->add_option("--config", r_config, "engine config JSON");
  run->add_option("--out", r_out, "certificate file");
  run->add_option("--seed", seed, "ambient seed")->envname("FORGE_SEED");
  run->add_flag("--trace", r_trace, "dump the largeness witness trees to stderr");
  run->callback([&] {
    EngineConfig cfg;
    if (!r_config.empty()) cfg = engine_config_from_json(read_json(r_config));
    cfg.N = r_n;
    auto oracle = coloring_from_json(read_json(r_coloring));
    try {
      auto result = monochromatic_copy(oracle, r_p, seed, cfg);
      auto report = verify_certificate(result.cert);
      emit(certificate_to_json(result.cert), r_out);
      Json info = {{"verified", report.ok()}, {"stats", stats_to_json(result.stats, result.ambient_stats)},
                   {"best_effort", result.best_effort}, {"log", result.log}};
      if (r_trace) {
        Json traces = Json::array();
        for (auto const& t : result.traces) traces.push_back(trace_to_json(t));
        info["traces"] = traces;
      }
      std::cerr << info.dump(1) << '\n';
      if (!report.ok()) exit_code = 1;
    } catch (LargenessDepthInsufficient const& e) {
      Json info = {{"error", e.what()}};
      if (r_trace) {
        Json traces = Json::array();
        for (auto const& t : e.traces()) traces.push_back(trace_to_json(t));
        info["traces"] = traces;
      }
      std::cerr << info.dump(1) << '\n';
      exit_code = 1;
    }
  });

  // verify
  auto* ver = app.add_subcommand("verify", "re-check a certificate without any engine state");
  std::string v_in;
  int v_depth = -1;
  ver->add_option("certificate", v_in, "certificate JSON")->required();
  ver->add_option("--depth", v_depth, "audit depth (default: the certificate's)");
  ver->callback([&] {
    auto report = verify_certificate(certificate_from_json(read_json(v_in)), v_depth);
    emit(report_to_json(report), "");
    if (!report.ok()) exit_code = 1;
  });

  // bridge
  auto* br = app.add_subcommand("bridge", "two-level Y_m over a rational sample and the 1/m demonstration");
  std::string b_sample, b_coloring, b_out, b_config;
  int b_m = 2;
  br->add_option("--sample", b_sample, "sample space JSON (distances in (0,1])")->required();
  br->add_option("--m", b_m, "grid");
  br->add_option("--coloring", b_coloring, "{\"colors\": [...]} per sample point, or a constant colouring");
  br->add_option("--config", b_config, "engine config JSON");
  br->add_option("--out", b_out, "report file");
  br->add_option("--seed", seed, "ambient seed")->envname("FORGE_SEED");
  br->callback([&] {
    auto sample = space_from_json(read_json(b_sample));
    if (b_coloring.empty()) {
      auto Y = build_Ym(sample, b_m);
      auto cover = eps_cover_check(Y);
      emit(Json{{"two_level", space_to_json(Y.full)}, {"cover_ok", cover.ok}, {"uncovered", cover.uncovered},
                {"cross_level", "shortest-path completion of the cross-level distances, capped at 1"}},
           b_out);
      if (!cover.ok) exit_code = 1;
      return;
    }
    auto cj = read_json(b_coloring);
    std::vector<std::string> colors;
    if (cj.contains("colors")) {
      colors = cj.at("colors").get<std::vector<std::string>>();
    } else {
      auto oracle = coloring_from_json(cj);
      if (oracle.kind() != ColoringOracle::Kind::Constant) throw Error("bridge colourings are per-point lists or constant");
      colors.assign(sample.size(), oracle.name(oracle.default_color()));
    }
    EngineConfig cfg;
    if (!b_config.empty()) cfg = engine_config_from_json(read_json(b_config));
    auto report = eps_mono_demo(sample, colors, b_m, seed, cfg);
    auto cover = eps_cover_check(report.Y);
    auto j = eps_report_to_json(report);
    j["cover_ok"] = cover.ok;
    emit(j, b_out);
    if (!report.cover_confirmed || !cover.ok) exit_code = 1;
  });

  // batch
  auto* bat = app.add_subcommand("batch", "run an experiment manifest");
  std::string m_in, m_out, m_format;
  std::size_t m_workers = 0;
  bat->add_option("manifest", m_in, "manifest JSON")->required();
  bat->add_option("--out", m_out, "output directory (overrides the manifest)");
  bat->add_option("--format", m_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  bat->add_option("--workers", m_workers, "worker threads");
  bat->callback([&] {
    auto manifest = manifest_from_json(read_json(m_in));
    if (!m_out.empty()) manifest.output_dir = m_out;
    if (!m_format.empty()) manifest.format = m_format;
    if (m_workers) manifest.workers = m_workers;
    auto summary = run_manifest(manifest);
    if (manifest.format == "csv")
      std::cout << summary_to_csv(summary);
    else
      std::cout << summary_to_json(summary).dump(1) << '\n';
    if (!summary.all_verified()) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e);
  } catch (std::exception const& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
