/* C interface to the dual-squeezing interferometer engine.
 *
 * Every function returns a dsmzi_status; on failure dsmzi_last_error()
 * holds a message for the calling thread. Objects returned through
 * pointer-to-pointer arguments are owned by the caller and released with
 * the matching *_free function. */
#ifndef DSMZI_DSMZI_H
#define DSMZI_DSMZI_H

#include <stddef.h>

#if defined(DSMZI_BUILDING_LIBRARY)
#define DSMZI_API __attribute__((visibility("default")))
#else
#define DSMZI_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dsmzi_status {
  DSMZI_OK = 0,
  DSMZI_ERR_INVALID_PARAMETER = 1,
  DSMZI_ERR_NUMERICAL_DEGENERACY = 2,
  DSMZI_ERR_TRUNCATION = 3,
  DSMZI_ERR_OVERFLOW = 4,
  DSMZI_ERR_ALL_DIVERGED = 5,
  DSMZI_ERR_INSUFFICIENT_DATA = 6,
  DSMZI_ERR_NULL_ARGUMENT = 7,
  DSMZI_ERR_INTERNAL = 99
} dsmzi_status;

typedef struct dsmzi_config {
  double alpha;
  double r1;
  double r2;
  double phi;
  double eta;
} dsmzi_config;

/* delta_phi_detection and scaled are +inf when diverged is nonzero. */
typedef struct dsmzi_report {
  double delta_phi_detection;
  double delta_phi_bound;
  double scaled;
  double saturability;
  double n_bar;
  int diverged;
  dsmzi_config config;
} dsmzi_report;

typedef enum dsmzi_path {
  DSMZI_PATH_CLOSED_FORM = 0,
  DSMZI_PATH_GAUSSIAN = 1,
  DSMZI_PATH_FOCK = 2
} dsmzi_path;

typedef struct dsmzi_moments {
  double n_minus_mean;
  double n_plus_mean;
  double n_minus_var;
  double dn_minus_dphi; /* NaN for the Fock path */
  dsmzi_path path;
} dsmzi_moments;

DSMZI_API const char* dsmzi_version(void);
DSMZI_API const char* dsmzi_last_error(void);
DSMZI_API const char* dsmzi_status_string(dsmzi_status status);

/* Sensitivity at cfg, including detection efficiency cfg->eta. */
DSMZI_API dsmzi_status dsmzi_report_compute(const dsmzi_config* cfg,
                                            dsmzi_report* out);
/* Fock path uses cutoff 50 with a 50-level guard band. */
DSMZI_API dsmzi_status dsmzi_moments_compute(const dsmzi_config* cfg,
                                             dsmzi_path path,
                                             dsmzi_moments* out);

/* Minimise over phi; cfg->phi is ignored. */
DSMZI_API dsmzi_status dsmzi_optimize_phase(const dsmzi_config* cfg,
                                            double* phi_opt,
                                            dsmzi_report* out);
/* Minimise over (r2, phi); cfg->r2 and cfg->phi are ignored. */
DSMZI_API dsmzi_status dsmzi_optimize_joint(const dsmzi_config* cfg,
                                            double* r2_opt, double* phi_opt,
                                            dsmzi_report* out);

/* Tables of named double columns; +inf marks a divergent entry. */
typedef struct dsmzi_table dsmzi_table;

typedef enum dsmzi_variable {
  DSMZI_VAR_R = 0,
  DSMZI_VAR_R2 = 1,
  DSMZI_VAR_PHI = 2,
  DSMZI_VAR_ALPHA = 3
} dsmzi_variable;

typedef struct dsmzi_sweep_spec {
  dsmzi_variable variable;
  double lo;
  double hi;
  int points;
  dsmzi_config fixed;
  int optimize_phi;
  int optimize_r2;
  int r2_follows_r1;
  int threads;
} dsmzi_sweep_spec;

DSMZI_API dsmzi_status dsmzi_table_preset(const char* name, int threads,
                                          dsmzi_table** out);
DSMZI_API dsmzi_status dsmzi_table_sweep(const dsmzi_sweep_spec* spec,
                                         dsmzi_table** out);
DSMZI_API size_t dsmzi_table_rows(const dsmzi_table* t);
DSMZI_API size_t dsmzi_table_cols(const dsmzi_table* t);
DSMZI_API const char* dsmzi_table_column(const dsmzi_table* t, size_t col);
DSMZI_API double dsmzi_table_value(const dsmzi_table* t, size_t row,
                                   size_t col);
DSMZI_API int dsmzi_table_diverged(const dsmzi_table* t);
DSMZI_API void dsmzi_table_free(dsmzi_table* t);

/* Space-separated preset names, e.g. "fig2 fig3 ...". */
DSMZI_API const char* dsmzi_preset_names(void);

/* Wigner function of one output mode on an nx x np grid. mode: 0 = a, 1 = b. */
typedef struct dsmzi_wigner dsmzi_wigner;

typedef struct dsmzi_grid {
  double x_lo;
  double x_hi;
  double p_lo;
  double p_hi;
  int nx;
  int np;
} dsmzi_grid;

DSMZI_API dsmzi_status dsmzi_wigner_compute(const dsmzi_config* cfg, int mode,
                                            const dsmzi_grid* grid,
                                            dsmzi_wigner** out);
DSMZI_API double dsmzi_wigner_x(const dsmzi_wigner* w, int i);
DSMZI_API double dsmzi_wigner_p(const dsmzi_wigner* w, int j);
DSMZI_API double dsmzi_wigner_value(const dsmzi_wigner* w, int i, int j);
DSMZI_API double dsmzi_wigner_intensity(const dsmzi_wigner* w, int mode);
DSMZI_API void dsmzi_wigner_free(dsmzi_wigner* w);

typedef struct dsmzi_validation dsmzi_validation;

DSMZI_API dsmzi_status dsmzi_validate_run(int full, int threads,
                                          dsmzi_validation** out);
DSMZI_API size_t dsmzi_validation_count(const dsmzi_validation* v);
DSMZI_API const char* dsmzi_validation_name(const dsmzi_validation* v, size_t i);
DSMZI_API int dsmzi_validation_passed(const dsmzi_validation* v, size_t i);
DSMZI_API const char* dsmzi_validation_detail(const dsmzi_validation* v,
                                              size_t i);
DSMZI_API double dsmzi_validation_seconds(const dsmzi_validation* v, size_t i);
DSMZI_API int dsmzi_validation_all_passed(const dsmzi_validation* v);
DSMZI_API void dsmzi_validation_free(dsmzi_validation* v);

#ifdef __cplusplus
}
#endif

#endif /* DSMZI_DSMZI_H */
