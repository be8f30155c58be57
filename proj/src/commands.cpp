#include "mhd2d/commands.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mhd2d/checks.hpp"

#ifndef MHD2D_VERSION
#define MHD2D_VERSION "unknown"
#endif

namespace mhd2d {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kCsvFile = "diagnostics.csv";
constexpr const char* kCheckpointFile = "final.chk";
constexpr const char* kReportFile = "regime_report.json";
constexpr const char* kManifestFile = "manifest.json";

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string platform_note() {
  std::string os =
#if defined(__linux__)
      "linux";
#elif defined(__APPLE__)
      "macos";
#elif defined(_WIN32)
      "windows";
#else
      "unknown-os";
#endif
#if defined(__x86_64__)
  os += " x86_64";
#elif defined(__aarch64__)
  os += " aarch64";
#endif
#if defined(__clang__)
  os += ", clang " __clang_version__;
#elif defined(__GNUC__)
  os += ", gcc " __VERSION__;
#endif
  return os + ", float64, FFTW3";
}

Json config_json(const SolverConfig& c) {
  return Json{{"alpha", c.alpha},
              {"beta", c.beta},
              {"nu", c.nu},
              {"eta", c.eta},
              {"n", c.n},
              {"dt", c.dt},
              {"t_end", c.t_end},
              {"output_every", c.output_every},
              {"integrator", to_string(c.integrator)},
              {"seed", c.seed},
              {"init", to_string(c.init)},
              {"amplitude", c.amplitude},
              {"band", c.band}};
}

void write_json(const fs::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

double budget_or_nan(const std::vector<DiagnosticsRecord>& records, const SolverConfig& c) {
  return records.size() >= 2 ? energy_budget_residual(records, c) : std::nan("");
}

Json regime_json(const std::vector<DiagnosticsRecord>& records, const SolverConfig& c) {
  const RegimeReport rep = regime_report(records, c);
  Json q = Json::array();
  for (const auto& s : rep.quantities) {
    q.push_back({{"name", s.name},
                 {"initial", s.initial},
                 {"final", s.final},
                 {"sup", s.sup},
                 {"t_at_sup", s.t_at_sup},
                 {"classification", s.growing ? "growing" : "bounded"}});
  }
  Json j{{"regime", to_string(rep.regime)},
         {"baseline", rep.baseline},
         {"samples", records.size()},
         {"budget_residual", budget_or_nan(records, c)},
         {"quantities", q}};
  if (rep.has_gamma) {
    j["gamma"] = rep.gamma;
    j["sup_lambda_gamma_b"] = rep.sup_lgamma_b;
    j["gamma_plus_beta_gt_3"] = rep.gamma_plus_beta_gt_3;
  }
  return j;
}

// Runs one simulation into out_dir. The manifest is written whatever
// happens; errors other than aborts are rethrown after that.
RunOutcome execute(const SolverConfig& config, const MHDState& init, const fs::path& out_dir,
                   std::ostream& log, const std::string& command, Json extra = Json::object()) {
  fs::create_directories(out_dir);
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();

  Json manifest{{"program", "mhd2d"},
                {"version", MHD2D_VERSION},
                {"command", command},
                {"platform", platform_note()},
                {"started", started}};
  for (auto& [k, v] : extra.items()) manifest[k] = v;
  manifest["config"] = config_json(config);
  manifest["config_text"] = emit_config(config);
  manifest["regime"] = to_string(classify_regime(config));
  manifest["baseline"] = config.beta == 0.0 || config.eta == 0.0;

  RunOutcome outcome;
  Json files = Json::object();
  auto finish = [&](const std::string& status) {
    manifest["status"] = status;
    manifest["finished"] = utc_now();
    manifest["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest["files"] = files;
    write_json(out_dir / kManifestFile, manifest);
  };

  try {
    std::ofstream csv(out_dir / kCsvFile, std::ios::binary | std::ios::trunc);
    if (!csv) throw Error("cannot write " + (out_dir / kCsvFile).string());
    csv << csv_header() << '\n';
    files["diagnostics"] = kCsvFile;
    const RunResult result = run(config, init, [&](const MHDState&, const DiagnosticsRecord& r) {
      csv << csv_row(r) << '\n';
    });
    csv.flush();
    if (!csv) throw Error("error writing " + (out_dir / kCsvFile).string());

    write_checkpoint(out_dir / kCheckpointFile, result.final_state, config);
    files["checkpoint"] = kCheckpointFile;
    write_json(out_dir / kReportFile, regime_json(result.records, config));
    files["regime_report"] = kReportFile;

    manifest["steps"] = result.steps;
    manifest["records"] = result.records.size();
    manifest["t_final"] = result.final_state.t;
    manifest["abort"] = result.aborted ? Json{{"reason", result.abort_reason},
                                              {"time", result.abort_time}}
                                       : Json();
    finish(result.aborted ? "aborted" : "completed");
    outcome.aborted = result.aborted;
    outcome.exit_code = result.aborted ? 2 : 0;
    outcome.records = result.records;
    log << command << ": " << (result.aborted ? "aborted: " + result.abort_reason : "completed")
        << " after " << result.steps << " steps, t = " << format_double(result.final_state.t)
        << ", " << result.records.size() << " records -> " << out_dir.string() << '\n';
  } catch (const std::exception& e) {
    manifest["error"] = e.what();
    finish("failed");
    throw;
  }
  return outcome;
}

struct PointResult {
  std::string status = "failed";
  std::string message;
  double sup_x = std::nan("");
  double sup_linf_w = std::nan("");
  double budget = std::nan("");
  std::string dir;
};

std::string point_dir(std::size_t index, const SolverConfig& c) {
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%03zu", index);
  return std::string(prefix) + "_a" + format_double(c.alpha) + "_b" + format_double(c.beta);
}

}  // namespace

RunOutcome cmd_run(const SolverConfig& config, const fs::path& out_dir, std::ostream& log) {
  config.validate();
  const MHDState init =
      make_initial(config.init, TorusGrid(config.n), config.seed, config.amplitude, config.band);
  return execute(config, init, out_dir, log, "run");
}

int cmd_sweep(const SweepSpec& spec, const fs::path& out_dir, std::ostream& log,
              unsigned threads) {
  const std::vector<SweepPoint> points = spec.points();
  fs::create_directories(out_dir / "points");
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<PointResult> results(points.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const SolverConfig& c = points[i].config;
      PointResult& r = results[i];
      r.dir = (fs::path("points") / point_dir(i, c)).generic_string();
      std::ostringstream point_log;
      try {
        const RunOutcome o = cmd_run(c, out_dir / r.dir, point_log);
        r.status = o.aborted ? "aborted" : "completed";
        double sx = 0.0, sw = 0.0;
        for (const auto& rec : o.records) {
          sx = std::max(sx, rec.X);
          sw = std::max(sw, rec.linf_w);
        }
        r.sup_x = sx;
        r.sup_linf_w = sw;
        r.budget = budget_or_nan(o.records, c);
      } catch (const std::exception& e) {
        r.status = "failed";
        r.message = e.what();
        point_log << "point failed: " << e.what() << '\n';
      }
      std::lock_guard<std::mutex> lock(log_mutex);
      log << "[" << i + 1 << "/" << points.size() << "] alpha = " << format_double(c.alpha)
          << ", beta = " << format_double(c.beta) << " (" << to_string(points[i].regime)
          << "): " << point_log.str();
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, unsigned(std::max<std::size_t>(points.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "alpha,beta,nu,eta,regime,status,sup_X,sup_linf_w,budget_residual,dir\n";
  Json pts = Json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SolverConfig& c = points[i].config;
    const PointResult& r = results[i];
    all_ok = all_ok && r.status == "completed";
    csv << format_double(c.alpha) << ',' << format_double(c.beta) << ',' << format_double(c.nu)
        << ',' << format_double(c.eta) << ',' << to_string(points[i].regime) << ',' << r.status
        << ',' << format_double(r.sup_x) << ',' << format_double(r.sup_linf_w) << ','
        << format_double(r.budget) << ',' << r.dir << '\n';
    Json p{{"alpha", c.alpha}, {"beta", c.beta}, {"regime", to_string(points[i].regime)},
           {"status", r.status}, {"dir", r.dir}};
    if (!r.message.empty()) p["error"] = r.message;
    pts.push_back(p);
  }
  write_text_file(out_dir / "summary.csv", csv.str());

  Json manifest{{"program", "mhd2d"},
                {"version", MHD2D_VERSION},
                {"command", "sweep"},
                {"platform", platform_note()},
                {"started", started},
                {"finished", utc_now()},
                {"wall_seconds",
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                {"alphas", spec.alphas},
                {"betas", spec.betas},
                {"base_config", config_json(spec.base)},
                {"points", pts},
                {"status", all_ok ? "completed" : "incomplete"},
                {"files", {{"summary", "summary.csv"}}}};
  write_json(out_dir / kManifestFile, manifest);
  log << "sweep: " << points.size() << " points -> " << (out_dir / "summary.csv").string() << '\n';
  return all_ok ? 0 : 2;
}

int cmd_check(const std::string& suite, std::uint64_t seed, const fs::path& out_dir,
              std::ostream& log) {
  const CheckReport report = run_checks(suite, seed);
  Json props = Json::array();
  for (const auto& p : report.properties) {
    Json values = Json::object();
    for (const auto& [k, v] : p.values) values[k] = v;
    props.push_back({{"suite", p.suite},
                     {"name", p.name},
                     {"passed", p.passed},
                     {"requirement", p.requirement},
                     {"values", values}});
    log << (p.passed ? "PASS " : "FAIL ") << p.suite << '/' << p.name << '\n';
  }
  fs::create_directories(out_dir);
  write_json(out_dir / "check_report.json", Json{{"program", "mhd2d"},
                                                 {"version", MHD2D_VERSION},
                                                 {"suite", suite},
                                                 {"seed", seed},
                                                 {"passed", report.passed()},
                                                 {"properties", props}});
  log << "check " << suite << ": " << (report.passed() ? "passed" : "FAILED") << " -> "
      << (out_dir / "check_report.json").string() << '\n';
  return report.passed() ? 0 : 1;
}

RunOutcome cmd_resume(const fs::path& checkpoint, const ResumeOptions& options,
                      const fs::path& out_dir, std::ostream& log) {
  const Checkpoint ck = read_checkpoint(checkpoint);
  SolverConfig c;
  std::string source = "defaults";
  const fs::path manifest = checkpoint.parent_path() / kManifestFile;
  if (fs::exists(manifest)) {
    const Json m = Json::parse(read_text_file(manifest));
    if (m.contains("config_text")) {
      c = parse_config_text(m["config_text"].get<std::string>());
      source = manifest.generic_string();
    }
  }
  c.alpha = ck.alpha;
  c.beta = ck.beta;
  c.nu = ck.nu;
  c.eta = ck.eta;
  c.n = ck.state.grid().n();
  c.band = std::min(c.band, c.n / 3);
  c.t_end = options.t_end;
  if (options.dt) c.dt = *options.dt;
  if (options.output_every) c.output_every = *options.output_every;
  c.validate();
  if (c.t_end < ck.state.t) {
    throw Error("resume: --t-end " + format_double(c.t_end) + " lies before the checkpoint time " +
                format_double(ck.state.t));
  }
  return execute(c, ck.state, out_dir, log, "resume",
                 Json{{"resumed_from", checkpoint.generic_string()},
                      {"t_start", ck.state.t},
                      {"settings_from", source}});
}

}  // namespace mhd2d
