#include "dsmzi/dsmzi.h"

#include <cmath>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "dsmzi/figures.hpp"
#include "dsmzi/fock.hpp"
#include "dsmzi/gaussian.hpp"
#include "dsmzi/optimize.hpp"
#include "dsmzi/sensitivity.hpp"
#include "dsmzi/closed_form.hpp"
#include "dsmzi/validate.hpp"

struct dsmzi_table {
  dsmzi::figures::Table table;
};

struct dsmzi_wigner {
  std::vector<double> xs;
  std::vector<double> ps;
  std::vector<double> values;  // row-major over (x, p)
  double intensity[2] = {0.0, 0.0};
};

struct dsmzi_validation {
  dsmzi::validate::Report report;
};

namespace {

thread_local std::string last_error;

dsmzi_status fail(dsmzi_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class Fn>
dsmzi_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return DSMZI_OK;
  } catch (const dsmzi::Error& e) {
    return fail(static_cast<dsmzi_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DSMZI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DSMZI_ERR_INTERNAL, e.what());
  }
}

dsmzi::InterferometerConfig to_cpp(const dsmzi_config& c) {
  return {c.alpha, c.r1, c.r2, c.phi, c.eta};
}

dsmzi_config to_c(const dsmzi::InterferometerConfig& c) {
  return {c.alpha, c.r1, c.r2, c.phi, c.eta};
}

dsmzi_report to_c(const dsmzi::sensitivity::SensitivityReport& r) {
  return {r.delta_phi_detection, r.delta_phi_bound, r.scaled, r.saturability,
          r.n_bar, r.diverged ? 1 : 0, to_c(r.config)};
}

#define DSMZI_REQUIRE(ptr)                                              \
  do {                                                                  \
    if (!(ptr)) return fail(DSMZI_ERR_NULL_ARGUMENT, #ptr " is null"); \
  } while (0)

}  // namespace

extern "C" {

const char* dsmzi_version(void) { return DSMZI_VERSION; }

const char* dsmzi_last_error(void) { return last_error.c_str(); }

const char* dsmzi_status_string(dsmzi_status status) {
  switch (status) {
    case DSMZI_OK: return "ok";
    case DSMZI_ERR_INVALID_PARAMETER: return "invalid parameter";
    case DSMZI_ERR_NUMERICAL_DEGENERACY: return "numerical degeneracy";
    case DSMZI_ERR_TRUNCATION: return "truncation";
    case DSMZI_ERR_OVERFLOW: return "overflow";
    case DSMZI_ERR_ALL_DIVERGED: return "all points diverged";
    case DSMZI_ERR_INSUFFICIENT_DATA: return "insufficient data";
    case DSMZI_ERR_NULL_ARGUMENT: return "null argument";
    case DSMZI_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

dsmzi_status dsmzi_report_compute(const dsmzi_config* cfg, dsmzi_report* out) {
  DSMZI_REQUIRE(cfg);
  DSMZI_REQUIRE(out);
  return guarded([&] {
    *out = to_c(dsmzi::sensitivity::phase_sensitivity_noisy(to_cpp(*cfg)));
  });
}

dsmzi_status dsmzi_moments_compute(const dsmzi_config* cfg, dsmzi_path path,
                                   dsmzi_moments* out) {
  DSMZI_REQUIRE(cfg);
  DSMZI_REQUIRE(out);
  return guarded([&] {
    const auto c = to_cpp(*cfg);
    dsmzi::MomentSet m;
    switch (path) {
      case DSMZI_PATH_CLOSED_FORM: m = dsmzi::closed_form::moments(c); break;
      case DSMZI_PATH_GAUSSIAN: m = dsmzi::gaussian::gaussian_photon_moments(c); break;
      case DSMZI_PATH_FOCK:
        m = dsmzi::fock::photon_statistics(dsmzi::fock::simulate_ds_mzi(c));
        break;
      default:
        throw dsmzi::Error(dsmzi::ErrorCode::kInvalidParameter, "unknown path");
    }
    *out = {m.n_minus_mean, m.n_plus_mean, m.n_minus_var,
            m.dn_minus_dphi.value_or(std::numeric_limits<double>::quiet_NaN()), path};
  });
}

dsmzi_status dsmzi_optimize_phase(const dsmzi_config* cfg, double* phi_opt,
                                  dsmzi_report* out) {
  DSMZI_REQUIRE(cfg);
  DSMZI_REQUIRE(phi_opt);
  DSMZI_REQUIRE(out);
  return guarded([&] {
    const auto o = dsmzi::optimize::optimal_phase(cfg->alpha, cfg->r1, cfg->r2, cfg->eta);
    *phi_opt = o.phi_opt;
    *out = to_c(o.report);
  });
}

dsmzi_status dsmzi_optimize_joint(const dsmzi_config* cfg, double* r2_opt,
                                  double* phi_opt, dsmzi_report* out) {
  DSMZI_REQUIRE(cfg);
  DSMZI_REQUIRE(r2_opt);
  DSMZI_REQUIRE(phi_opt);
  DSMZI_REQUIRE(out);
  return guarded([&] {
    const auto o = dsmzi::optimize::optimal_r2(cfg->alpha, cfg->r1, cfg->eta);
    *r2_opt = o.r2_opt;
    *phi_opt = o.phi_opt;
    *out = to_c(o.report);
  });
}

dsmzi_status dsmzi_table_preset(const char* name, int threads, dsmzi_table** out) {
  DSMZI_REQUIRE(name);
  DSMZI_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    if (threads < 1) {
      throw dsmzi::Error(dsmzi::ErrorCode::kInvalidParameter, "threads must be >= 1");
    }
    *out = new dsmzi_table{dsmzi::figures::preset(name, threads)};
  });
}

dsmzi_status dsmzi_table_sweep(const dsmzi_sweep_spec* spec, dsmzi_table** out) {
  DSMZI_REQUIRE(spec);
  DSMZI_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    dsmzi::optimize::SweepSpec s;
    switch (spec->variable) {
      case DSMZI_VAR_R: s.variable = dsmzi::optimize::SweepVariable::kR; break;
      case DSMZI_VAR_R2: s.variable = dsmzi::optimize::SweepVariable::kR2; break;
      case DSMZI_VAR_PHI: s.variable = dsmzi::optimize::SweepVariable::kPhi; break;
      case DSMZI_VAR_ALPHA: s.variable = dsmzi::optimize::SweepVariable::kAlpha; break;
      default:
        throw dsmzi::Error(dsmzi::ErrorCode::kInvalidParameter, "unknown sweep variable");
    }
    s.lo = spec->lo;
    s.hi = spec->hi;
    s.points = spec->points;
    s.fixed = to_cpp(spec->fixed);
    s.optimize_phi = spec->optimize_phi != 0;
    s.optimize_r2 = spec->optimize_r2 != 0;
    s.r2_follows_r1 = spec->r2_follows_r1 != 0;
    s.threads = spec->threads;
    const auto curve = dsmzi::optimize::sweep(s);
    *out = new dsmzi_table{dsmzi::figures::curve_table(s, curve)};
  });
}

size_t dsmzi_table_rows(const dsmzi_table* t) { return t ? t->table.rows.size() : 0; }

size_t dsmzi_table_cols(const dsmzi_table* t) { return t ? t->table.columns.size() : 0; }

const char* dsmzi_table_column(const dsmzi_table* t, size_t col) {
  if (!t || col >= t->table.columns.size()) return nullptr;
  return t->table.columns[col].c_str();
}

double dsmzi_table_value(const dsmzi_table* t, size_t row, size_t col) {
  if (!t || row >= t->table.rows.size() || col >= t->table.columns.size()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return t->table.rows[row][col];
}

int dsmzi_table_diverged(const dsmzi_table* t) { return t ? t->table.diverged : 0; }

void dsmzi_table_free(dsmzi_table* t) { delete t; }

const char* dsmzi_preset_names(void) {
  static const std::string joined = [] {
    std::string s;
    for (const auto& n : dsmzi::figures::preset_names()) {
      if (!s.empty()) s += ' ';
      s += n;
    }
    return s;
  }();
  return joined.c_str();
}

dsmzi_status dsmzi_wigner_compute(const dsmzi_config* cfg, int mode,
                                  const dsmzi_grid* grid, dsmzi_wigner** out) {
  DSMZI_REQUIRE(cfg);
  DSMZI_REQUIRE(grid);
  DSMZI_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    using namespace dsmzi::gaussian;
    if (mode != 0 && mode != 1) {
      throw dsmzi::Error(dsmzi::ErrorCode::kInvalidParameter, "mode must be 0 (a) or 1 (b)");
    }
    if (grid->nx < 2 || grid->np < 2 || !(grid->x_lo < grid->x_hi) ||
        !(grid->p_lo < grid->p_hi) || !std::isfinite(grid->x_lo) ||
        !std::isfinite(grid->x_hi) || !std::isfinite(grid->p_lo) ||
        !std::isfinite(grid->p_hi)) {
      throw dsmzi::Error(dsmzi::ErrorCode::kInvalidParameter, "degenerate Wigner grid");
    }
    const GaussianState s = ds_mzi_output(to_cpp(*cfg));
    const ModeMarginal ma = mode_marginal(s, Mode::kA);
    const ModeMarginal mb = mode_marginal(s, Mode::kB);
    auto w = std::make_unique<dsmzi_wigner>();
    w->intensity[0] = mode_intensity(ma);
    w->intensity[1] = mode_intensity(mb);
    const ModeMarginal& m = mode == 0 ? ma : mb;
    for (int i = 0; i < grid->nx; ++i)
      w->xs.push_back(grid->x_lo + (grid->x_hi - grid->x_lo) * i / (grid->nx - 1));
    for (int j = 0; j < grid->np; ++j)
      w->ps.push_back(grid->p_lo + (grid->p_hi - grid->p_lo) * j / (grid->np - 1));
    w->values.reserve(w->xs.size() * w->ps.size());
    for (double x : w->xs)
      for (double p : w->ps) w->values.push_back(wigner_value(m, x, p));
    *out = w.release();
  });
}

double dsmzi_wigner_x(const dsmzi_wigner* w, int i) {
  return w && i >= 0 && i < static_cast<int>(w->xs.size()) ? w->xs[i]
                                                           : std::numeric_limits<double>::quiet_NaN();
}

double dsmzi_wigner_p(const dsmzi_wigner* w, int j) {
  return w && j >= 0 && j < static_cast<int>(w->ps.size()) ? w->ps[j]
                                                           : std::numeric_limits<double>::quiet_NaN();
}

double dsmzi_wigner_value(const dsmzi_wigner* w, int i, int j) {
  if (!w || i < 0 || j < 0 || i >= static_cast<int>(w->xs.size()) ||
      j >= static_cast<int>(w->ps.size())) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return w->values[static_cast<size_t>(i) * w->ps.size() + j];
}

double dsmzi_wigner_intensity(const dsmzi_wigner* w, int mode) {
  if (!w || (mode != 0 && mode != 1)) return std::numeric_limits<double>::quiet_NaN();
  return w->intensity[mode];
}

void dsmzi_wigner_free(dsmzi_wigner* w) { delete w; }

dsmzi_status dsmzi_validate_run(int full, int threads, dsmzi_validation** out) {
  DSMZI_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    dsmzi::validate::Options opts;
    opts.level = full ? dsmzi::validate::Level::kFull : dsmzi::validate::Level::kQuick;
    opts.threads = threads < 1 ? 1 : threads;
    *out = new dsmzi_validation{dsmzi::validate::run(opts)};
  });
}

size_t dsmzi_validation_count(const dsmzi_validation* v) {
  return v ? v->report.checks.size() : 0;
}

const char* dsmzi_validation_name(const dsmzi_validation* v, size_t i) {
  return v && i < v->report.checks.size() ? v->report.checks[i].name.c_str() : nullptr;
}

int dsmzi_validation_passed(const dsmzi_validation* v, size_t i) {
  return v && i < v->report.checks.size() && v->report.checks[i].passed ? 1 : 0;
}

const char* dsmzi_validation_detail(const dsmzi_validation* v, size_t i) {
  return v && i < v->report.checks.size() ? v->report.checks[i].detail.c_str() : nullptr;
}

double dsmzi_validation_seconds(const dsmzi_validation* v, size_t i) {
  return v && i < v->report.checks.size() ? v->report.checks[i].seconds : 0.0;
}

int dsmzi_validation_all_passed(const dsmzi_validation* v) {
  return v && v->report.all_passed() ? 1 : 0;
}

void dsmzi_validation_free(dsmzi_validation* v) { delete v; }

}  // extern "C"
