// dsmzi: batch front end over libdsmzi.
//
//   dsmzi report   --alpha A --r1 R [--r2 R2] --phi P [--eta E]
//   dsmzi sweep    --preset fig2|fig3|fig4a|fig4b|fig4c
//   dsmzi sweep    --var r|r2|phi|alpha --lo L --hi H --points N [...]
//   dsmzi optimize --alpha A --r1 R [--eta E] [--joint]
//   dsmzi wigner   --alpha A --r1 R [--r2 R2] --phi P --mode a|b [grid]
//   dsmzi validate [--quick|--full]
//
// Exit status: 0 success, 1 computation failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>

#include "dsmzi/dsmzi.h"

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Global {
  std::string out;
  bool json_output = false;
  bool strict = false;
  int threads = 1;
};

struct CommandError {
  int exit_code;
  std::string message;
};

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// JSON numbers carry 12 significant digits; non-finite values become null.
json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(num(v).c_str(), nullptr);
}

void check(dsmzi_status s) {
  if (s == DSMZI_OK) return;
  const int code = s == DSMZI_ERR_INVALID_PARAMETER || s == DSMZI_ERR_OVERFLOW ? kExitUsage
                                                                               : kExitFailure;
  throw CommandError{code, std::string(dsmzi_status_string(s)) + ": " + dsmzi_last_error()};
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw CommandError{kExitFailure, "cannot write " + tmp.string()};
    f << content;
    f.flush();
    if (!f) throw CommandError{kExitFailure, "write failed: " + tmp.string()};
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw CommandError{kExitFailure, "cannot rename onto " + path + ": " + ec.message()};
  }
}

// Primary output goes to --out when given, otherwise standard output.
void emit(const Global& g, const std::string& content) {
  if (g.out.empty()) {
    std::cout << content;
  } else {
    write_atomic(g.out, content);
  }
}

json manifest(const std::string& command, const json& params, Clock::time_point t0,
              int diverged) {
  json m;
  m["command"] = command;
  m["parameters"] = params;
  m["version"] = dsmzi_version();
  m["duration_seconds"] = jnum(std::chrono::duration<double>(Clock::now() - t0).count());
  m["diverged_points"] = diverged;
  return m;
}

json config_json(const dsmzi_config& c) {
  return {{"alpha", jnum(c.alpha)}, {"r1", jnum(c.r1)}, {"r2", jnum(c.r2)},
          {"phi", jnum(c.phi)},     {"eta", jnum(c.eta)}};
}

json report_json(const dsmzi_report& r) {
  return {{"delta_phi_detection", jnum(r.delta_phi_detection)},
          {"delta_phi_bound", jnum(r.delta_phi_bound)},
          {"scaled", jnum(r.scaled)},
          {"saturability", jnum(r.saturability)},
          {"n_bar", jnum(r.n_bar)},
          {"diverged", r.diverged != 0},
          {"config", config_json(r.config)}};
}

std::string table_csv(const dsmzi_table* t) {
  std::ostringstream os;
  const size_t cols = dsmzi_table_cols(t);
  for (size_t j = 0; j < cols; ++j) os << (j ? "," : "") << dsmzi_table_column(t, j);
  os << '\n';
  for (size_t i = 0; i < dsmzi_table_rows(t); ++i) {
    for (size_t j = 0; j < cols; ++j) os << (j ? "," : "") << num(dsmzi_table_value(t, i, j));
    os << '\n';
  }
  return os.str();
}

struct TableHandle {
  dsmzi_table* t = nullptr;
  ~TableHandle() { dsmzi_table_free(t); }
};

struct ConfigFlags {
  double alpha = 0.0;
  double r1 = 0.0;
  std::optional<double> r2;
  double phi = 0.0;
  double eta = 1.0;

  dsmzi_config config() const { return {alpha, r1, r2.value_or(r1), phi, eta}; }
};

void add_config_flags(CLI::App* app, ConfigFlags& f, bool need_phi) {
  app->add_option("--alpha", f.alpha, "coherent amplitude")->required();
  app->add_option("--r1", f.r1, "input squeezing")->required();
  app->add_option("--r2", f.r2, "output squeezing (default r1)");
  auto* phi = app->add_option("--phi", f.phi, "phase (radians)");
  if (need_phi) phi->required();
  app->add_option("--eta", f.eta, "detection efficiency")->capture_default_str();
}

int cmd_report(const Global& g, const ConfigFlags& f) {
  const auto t0 = Clock::now();
  const dsmzi_config cfg = f.config();
  dsmzi_report r{};
  check(dsmzi_report_compute(&cfg, &r));
  json out = report_json(r);
  out["manifest"] = manifest("report", config_json(cfg), t0, r.diverged);
  emit(g, out.dump(2) + "\n");
  return g.strict && r.diverged ? kExitFailure : kExitOk;
}

struct SweepFlags {
  std::string preset;
  std::string var;
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
  std::string optimize;
  bool balanced = false;
  ConfigFlags cfg;
};

int cmd_sweep(const Global& g, const SweepFlags& f) {
  const auto t0 = Clock::now();
  TableHandle h;
  json params;
  if (!f.preset.empty()) {
    if (!f.var.empty()) throw CommandError{kExitUsage, "--preset and --var are exclusive"};
    check(dsmzi_table_preset(f.preset.c_str(), g.threads, &h.t));
    params["preset"] = f.preset;
  } else {
    if (f.var.empty()) throw CommandError{kExitUsage, "sweep needs --preset or --var"};
    dsmzi_sweep_spec s{};
    if (f.var == "r") s.variable = DSMZI_VAR_R;
    else if (f.var == "r2") s.variable = DSMZI_VAR_R2;
    else if (f.var == "phi") s.variable = DSMZI_VAR_PHI;
    else if (f.var == "alpha") s.variable = DSMZI_VAR_ALPHA;
    else throw CommandError{kExitUsage, "unknown --var " + f.var};
    s.lo = f.lo;
    s.hi = f.hi;
    s.points = f.points;
    s.fixed = f.cfg.config();
    s.optimize_phi = f.optimize.find("phi") != std::string::npos;
    s.optimize_r2 = f.optimize.find("r2") != std::string::npos;
    s.r2_follows_r1 = f.balanced;
    s.threads = g.threads;
    check(dsmzi_table_sweep(&s, &h.t));
    params = {{"var", f.var}, {"lo", jnum(f.lo)}, {"hi", jnum(f.hi)}, {"points", f.points},
              {"optimize", f.optimize}, {"balanced", f.balanced},
              {"fixed", config_json(s.fixed)}};
  }
  const int diverged = dsmzi_table_diverged(h.t);
  const std::string csv = table_csv(h.t);
  json m = manifest("sweep", params, t0, diverged);
  m["rows"] = dsmzi_table_rows(h.t);
  if (!g.out.empty()) {
    write_atomic(g.out, csv);
    write_atomic(g.out + ".manifest.json", m.dump(2) + "\n");
    if (g.json_output) std::cout << m.dump(2) << "\n";
  } else if (g.json_output) {
    std::cout << m.dump(2) << "\n";
  } else {
    std::cout << csv;
  }
  return g.strict && diverged > 0 ? kExitFailure : kExitOk;
}

int cmd_optimize(const Global& g, const ConfigFlags& f, bool joint) {
  const auto t0 = Clock::now();
  dsmzi_config cfg = f.config();
  dsmzi_report r{};
  json out;
  if (joint) {
    double r2 = 0.0, phi = 0.0;
    check(dsmzi_optimize_joint(&cfg, &r2, &phi, &r));
    out["phi_opt"] = jnum(phi);
    out["r2_opt"] = jnum(r2);
  } else {
    double phi = 0.0;
    check(dsmzi_optimize_phase(&cfg, &phi, &r));
    out["phi_opt"] = jnum(phi);
  }
  out["report"] = report_json(r);
  json params = config_json(cfg);
  params.erase("phi");
  if (joint) params.erase("r2");
  params["joint"] = joint;
  out["manifest"] = manifest("optimize", params, t0, r.diverged);
  emit(g, out.dump(2) + "\n");
  return g.strict && r.diverged ? kExitFailure : kExitOk;
}

struct WignerFlags {
  ConfigFlags cfg;
  std::string mode = "a";
  double x_lo = -6, x_hi = 6, p_lo = -6, p_hi = 6;
  int nx = 121, np = 121;
};

int cmd_wigner(const Global& g, const WignerFlags& f) {
  const auto t0 = Clock::now();
  if (f.mode != "a" && f.mode != "b") throw CommandError{kExitUsage, "--mode must be a or b"};
  const dsmzi_config cfg = f.cfg.config();
  const dsmzi_grid grid{f.x_lo, f.x_hi, f.p_lo, f.p_hi, f.nx, f.np};
  dsmzi_wigner* w = nullptr;
  check(dsmzi_wigner_compute(&cfg, f.mode == "a" ? 0 : 1, &grid, &w));
  std::ostringstream os;
  os << "x,p,w\n";
  for (int i = 0; i < f.nx; ++i)
    for (int j = 0; j < f.np; ++j)
      os << num(dsmzi_wigner_x(w, i)) << ',' << num(dsmzi_wigner_p(w, j)) << ','
         << num(dsmzi_wigner_value(w, i, j)) << '\n';
  json params = config_json(cfg);
  params["mode"] = f.mode;
  params["grid"] = {{"x_lo", jnum(f.x_lo)}, {"x_hi", jnum(f.x_hi)}, {"p_lo", jnum(f.p_lo)},
                    {"p_hi", jnum(f.p_hi)}, {"nx", f.nx},         {"np", f.np}};
  json m = manifest("wigner", params, t0, 0);
  m["intensity_a"] = jnum(dsmzi_wigner_intensity(w, 0));
  m["intensity_b"] = jnum(dsmzi_wigner_intensity(w, 1));
  dsmzi_wigner_free(w);
  if (!g.out.empty()) {
    write_atomic(g.out, os.str());
    write_atomic(g.out + ".manifest.json", m.dump(2) + "\n");
    if (g.json_output) std::cout << m.dump(2) << "\n";
  } else if (g.json_output) {
    std::cout << m.dump(2) << "\n";
  } else {
    std::cout << os.str();
  }
  return kExitOk;
}

int cmd_validate(const Global& g, bool full) {
  const auto t0 = Clock::now();
  dsmzi_validation* v = nullptr;
  check(dsmzi_validate_run(full ? 1 : 0, g.threads, &v));
  const bool ok = dsmzi_validation_all_passed(v) != 0;
  std::ostringstream os;
  json checks = json::array();
  for (size_t i = 0; i < dsmzi_validation_count(v); ++i) {
    const bool passed = dsmzi_validation_passed(v, i) != 0;
    char line[512];
    std::snprintf(line, sizeof line, "%-4s  %-44s %7.2fs  %s\n", passed ? "PASS" : "FAIL",
                  dsmzi_validation_name(v, i), dsmzi_validation_seconds(v, i),
                  dsmzi_validation_detail(v, i));
    os << line;
    checks.push_back({{"name", dsmzi_validation_name(v, i)},
                      {"passed", passed},
                      {"detail", dsmzi_validation_detail(v, i)}});
  }
  dsmzi_validation_free(v);
  os << (ok ? "all checks passed\n" : "validation FAILED\n");
  if (g.json_output) {
    json out{{"passed", ok}, {"checks", checks}};
    out["manifest"] = manifest("validate", {{"level", full ? "full" : "quick"}}, t0, 0);
    emit(g, out.dump(2) + "\n");
  } else {
    emit(g, os.str());
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual-squeezing interferometer sensitivity engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dsmzi_version()));
  Global g;
  app.add_option("--out", g.out, "write the primary output to PATH (atomic)");
  app.add_flag("--json", g.json_output, "emit JSON on standard output");
  app.add_flag("--strict", g.strict, "treat divergence as failure");
  app.add_option("--threads", g.threads, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);

  ConfigFlags report_flags;
  auto* report = app.add_subcommand("report", "sensitivity at one configuration");
  add_config_flags(report, report_flags, true);

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "figure presets or explicit sweeps to CSV");
  sweep->add_option("--preset", sweep_flags.preset, "fig2, fig3, fig4a, fig4b or fig4c");
  sweep->add_option("--var", sweep_flags.var, "r, r2, phi or alpha");
  sweep->add_option("--lo", sweep_flags.lo);
  sweep->add_option("--hi", sweep_flags.hi);
  sweep->add_option("--points", sweep_flags.points);
  sweep->add_option("--optimize", sweep_flags.optimize, "phi, r2 or phi,r2");
  sweep->add_flag("--balanced", sweep_flags.balanced, "with --var r, keep r2 = r1");
  sweep_flags.cfg.alpha = std::sqrt(10.0);
  sweep_flags.cfg.phi = std::numbers::pi / 2;
  sweep->add_option("--alpha", sweep_flags.cfg.alpha);
  sweep->add_option("--r1", sweep_flags.cfg.r1);
  sweep->add_option("--r2", sweep_flags.cfg.r2);
  sweep->add_option("--phi", sweep_flags.cfg.phi);
  sweep->add_option("--eta", sweep_flags.cfg.eta);

  ConfigFlags opt_flags;
  bool joint = false;
  auto* optimize = app.add_subcommand("optimize", "optimal working point");
  add_config_flags(optimize, opt_flags, false);
  optimize->add_flag("--joint", joint, "optimise r2 together with phi");

  WignerFlags wf;
  auto* wigner = app.add_subcommand("wigner", "output-mode Wigner function on a grid");
  add_config_flags(wigner, wf.cfg, true);
  wigner->add_option("--mode", wf.mode, "a or b")->capture_default_str();
  wigner->add_option("--xmin", wf.x_lo)->capture_default_str();
  wigner->add_option("--xmax", wf.x_hi)->capture_default_str();
  wigner->add_option("--pmin", wf.p_lo)->capture_default_str();
  wigner->add_option("--pmax", wf.p_hi)->capture_default_str();
  wigner->add_option("--nx", wf.nx)->capture_default_str();
  wigner->add_option("--np", wf.np)->capture_default_str();

  bool quick = false, full = false;
  auto* validate = app.add_subcommand("validate", "run the self-check suite");
  auto* q = validate->add_flag("--quick", quick, "small grids (default)");
  validate->add_flag("--full", full, "all checks")->excludes(q);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*report) return cmd_report(g, report_flags);
    if (*sweep) return cmd_sweep(g, sweep_flags);
    if (*optimize) return cmd_optimize(g, opt_flags, joint);
    if (*wigner) return cmd_wigner(g, wf);
    if (*validate) return cmd_validate(g, full);
  } catch (const CommandError& e) {
    std::cerr << "dsmzi: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "dsmzi: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
