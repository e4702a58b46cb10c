#include "forge/manifest.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace forge {

ExperimentManifest manifest_from_json(Json const& j) {
  ExperimentManifest m;
  if (j.contains("output_dir")) m.output_dir = j.at("output_dir").get<std::string>();
  m.format = j.value("format", std::string("json"));
  if (m.format != "json" && m.format != "csv") throw Error("manifest format must be json or csv");
  m.workers = j.value("workers", std::size_t{0});
  EngineConfig defaults;
  if (j.contains("defaults")) defaults = engine_config_from_json(j.at("defaults"));
  std::size_t index = 0;
  for (auto const& r : j.value("runs", Json::array())) {
    ManifestRun run;
    run.name = r.value("name", "run-" + std::to_string(index));
    run.p = r.at("p").get<int>();
    run.seed = r.value("seed", std::uint64_t{0});
    run.coloring = coloring_from_json(r.at("coloring"));
    run.cfg = engine_config_from_json(r, defaults);
    if (run.p < 1) throw Error("run '" + run.name + "': p must be at least 1");
    m.runs.push_back(std::move(run));
    ++index;
  }
  return m;
}

bool BatchSummary::all_verified() const {
  for (auto const& r : rows)
    if (!r.verified) return false;
  return true;
}

namespace {

void write_json(std::filesystem::path const& path, Json const& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

RunSummary execute(ManifestRun const& run, std::filesystem::path const& dir) {
  RunSummary row;
  row.name = run.name;
  row.p = run.p;
  row.family = coloring_family(run.coloring);
  row.N = run.cfg.N;
  auto const start = std::chrono::steady_clock::now();
  Json artifact;
  std::string suffix;
  try {
    auto result = monochromatic_copy(run.coloring, run.p, run.seed, run.cfg);
    auto report = verify_certificate(result.cert);
    row.success = true;
    row.verified = report.ok();
    row.backtracks = result.stats.backtracks;
    artifact = certificate_to_json(result.cert);
    suffix = ".cert.json";
  } catch (LargenessDepthInsufficient const& e) {
    row.error = e.what();
    Json traces = Json::array();
    for (auto const& t : e.traces()) traces.push_back(trace_to_json(t));
    artifact = {{"run", run.name}, {"error", row.error}, {"traces", traces}};
    suffix = ".failure.json";
  } catch (std::exception const& e) {
    row.error = e.what();
    artifact = {{"run", run.name}, {"error", row.error}};
    suffix = ".failure.json";
  }
  row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!dir.empty()) {
    auto path = dir / (run.name + suffix);
    write_json(path, artifact);
    row.artifact = path.string();
  }
  return row;
}

}  // namespace

BatchSummary run_manifest(ExperimentManifest const& manifest) {
  BatchSummary summary;
  summary.rows.resize(manifest.runs.size());
  if (!manifest.output_dir.empty()) std::filesystem::create_directories(manifest.output_dir);
  std::size_t workers = manifest.workers ? manifest.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(manifest.runs.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < manifest.runs.size(); i = next++)
      summary.rows[i] = execute(manifest.runs[i], manifest.output_dir);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (!manifest.output_dir.empty()) {
    if (manifest.format == "csv") {
      std::ofstream out(manifest.output_dir / "summary.csv");
      out << summary_to_csv(summary);
    } else {
      write_json(manifest.output_dir / "summary.json", summary_to_json(summary));
    }
  }
  return summary;
}

Json summary_to_json(BatchSummary const& s) {
  Json rows = Json::array();
  for (auto const& r : s.rows)
    rows.push_back({{"name", r.name}, {"p", r.p}, {"family", r.family}, {"N", r.N},
                    {"success", r.success}, {"verified", r.verified}, {"runtime_ms", r.runtime_ms},
                    {"backtracks", r.backtracks}, {"error", r.error}, {"artifact", r.artifact}});
  return {{"runs", rows}, {"all_verified", s.all_verified()}};
}

std::string summary_to_csv(BatchSummary const& s) {
  std::ostringstream os;
  os << "name,p,family,N,success,verified,runtime_ms,backtracks,error\n";
  for (auto const& r : s.rows) {
    std::string err = r.error;
    for (auto& ch : err)
      if (ch == ',' || ch == '\n') ch = ';';
    os << r.name << ',' << r.p << ',' << r.family << ',' << r.N << ',' << r.success << ','
       << r.verified << ',' << r.runtime_ms << ',' << r.backtracks << ',' << err << '\n';
  }
  return os.str();
}

}  // namespace forge
