#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "dsmzi/dsmzi.h"

namespace {
constexpr double kHalfPi = 1.5707963267948966;
}

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_GT(std::strlen(dsmzi_version()), 0u);
  EXPECT_STREQ(dsmzi_status_string(DSMZI_OK), "ok");
  EXPECT_NE(std::string(dsmzi_status_string(DSMZI_ERR_TRUNCATION)).find("trunc"),
            std::string::npos);
}

TEST(CApi, ReportReferenceValue) {
  const dsmzi_config cfg{1, 0.5, 0.5, kHalfPi, 1};
  dsmzi_report rep{};
  ASSERT_EQ(dsmzi_report_compute(&cfg, &rep), DSMZI_OK);
  EXPECT_NEAR(rep.delta_phi_detection, 0.825424623105555, 1e-12);
  EXPECT_EQ(rep.diverged, 0);
  EXPECT_EQ(rep.config.r2, 0.5);
}

TEST(CApi, ErrorsAreCodesNotExceptions) {
  dsmzi_report rep{};
  dsmzi_config bad{-1, 0.5, 0.5, 1, 1};
  EXPECT_EQ(dsmzi_report_compute(&bad, &rep), DSMZI_ERR_INVALID_PARAMETER);
  EXPECT_GT(std::strlen(dsmzi_last_error()), 0u);
  bad = {1, 25, 0.5, 1, 1};
  EXPECT_EQ(dsmzi_report_compute(&bad, &rep), DSMZI_ERR_OVERFLOW);
  EXPECT_EQ(dsmzi_report_compute(nullptr, &rep), DSMZI_ERR_NULL_ARGUMENT);
  const dsmzi_config none{0, 0, 0, 1, 1};
  double phi = 0;
  EXPECT_EQ(dsmzi_optimize_phase(&none, &phi, &rep), DSMZI_ERR_ALL_DIVERGED);
  dsmzi_table* t = nullptr;
  EXPECT_EQ(dsmzi_table_preset("nope", 1, &t), DSMZI_ERR_INVALID_PARAMETER);
  EXPECT_EQ(t, nullptr);
}

TEST(CApi, MomentPathsAgree) {
  const dsmzi_config cfg{1, 0.6, 0.9, 2.0, 1};
  dsmzi_moments a{}, g{}, f{};
  ASSERT_EQ(dsmzi_moments_compute(&cfg, DSMZI_PATH_CLOSED_FORM, &a), DSMZI_OK);
  ASSERT_EQ(dsmzi_moments_compute(&cfg, DSMZI_PATH_GAUSSIAN, &g), DSMZI_OK);
  ASSERT_EQ(dsmzi_moments_compute(&cfg, DSMZI_PATH_FOCK, &f), DSMZI_OK);
  EXPECT_NEAR(a.n_minus_var, 5.137075013870, 1e-9);
  EXPECT_NEAR(g.n_minus_var, a.n_minus_var, 1e-10);
  EXPECT_NEAR(f.n_minus_var, a.n_minus_var, 1e-8);
  EXPECT_TRUE(std::isnan(f.dn_minus_dphi));
  EXPECT_EQ(f.path, DSMZI_PATH_FOCK);
}

TEST(CApi, Optimisers) {
  const dsmzi_config cfg{std::sqrt(10.0), 1.0, 1.0, 0, 0.9};
  double phi = 0, r2 = 0, phi2 = 0;
  dsmzi_report p{}, j{};
  ASSERT_EQ(dsmzi_optimize_phase(&cfg, &phi, &p), DSMZI_OK);
  ASSERT_EQ(dsmzi_optimize_joint(&cfg, &r2, &phi2, &j), DSMZI_OK);
  EXPECT_GT(phi, kHalfPi);
  EXPECT_LE(j.delta_phi_detection, p.delta_phi_detection * (1 + 1e-9));
  EXPECT_EQ(j.config.r2, r2);
}

TEST(CApi, SweepTable) {
  dsmzi_sweep_spec spec{};
  spec.variable = DSMZI_VAR_PHI;
  spec.lo = 0.5;
  spec.hi = 2.5;
  spec.points = 2;
  spec.fixed = {1, 0.5, 0.5, 0, 1};
  spec.threads = 2;
  dsmzi_table* t = nullptr;
  ASSERT_EQ(dsmzi_table_sweep(&spec, &t), DSMZI_OK);
  EXPECT_EQ(dsmzi_table_rows(t), 2u);
  EXPECT_EQ(dsmzi_table_cols(t), 11u);
  EXPECT_STREQ(dsmzi_table_column(t, 0), "phi");
  EXPECT_EQ(dsmzi_table_value(t, 1, 0), 2.5);
  EXPECT_EQ(dsmzi_table_column(t, 99), nullptr);
  EXPECT_TRUE(std::isnan(dsmzi_table_value(t, 5, 0)));
  dsmzi_table_free(t);
  spec.points = 1;
  EXPECT_EQ(dsmzi_table_sweep(&spec, &t), DSMZI_ERR_INVALID_PARAMETER);
  EXPECT_NE(std::string(dsmzi_preset_names()).find("fig4b"), std::string::npos);
}

TEST(CApi, WignerGrid) {
  const dsmzi_config cfg{0, 0, 0, 1, 1};
  const dsmzi_grid grid{-2, 2, -2, 2, 5, 5};
  dsmzi_wigner* w = nullptr;
  ASSERT_EQ(dsmzi_wigner_compute(&cfg, 0, &grid, &w), DSMZI_OK);
  EXPECT_EQ(dsmzi_wigner_x(w, 2), 0.0);
  EXPECT_NEAR(dsmzi_wigner_value(w, 2, 2), 1 / (2 * M_PI), 1e-14);
  EXPECT_NEAR(dsmzi_wigner_intensity(w, 0), 0.5, 1e-14);
  dsmzi_wigner_free(w);
  const dsmzi_grid flat{-2, 2, -2, 2, 1, 5};
  EXPECT_EQ(dsmzi_wigner_compute(&cfg, 0, &flat, &w), DSMZI_ERR_INVALID_PARAMETER);
  EXPECT_EQ(dsmzi_wigner_compute(&cfg, 2, &grid, &w), DSMZI_ERR_INVALID_PARAMETER);
}

TEST(CApi, QuickValidation) {
  dsmzi_validation* v = nullptr;
  ASSERT_EQ(dsmzi_validate_run(0, 2, &v), DSMZI_OK);
  EXPECT_EQ(dsmzi_validation_count(v), 6u);
  EXPECT_EQ(dsmzi_validation_all_passed(v), 1);
  EXPECT_STREQ(dsmzi_validation_name(v, 0), "symplectic invariants");
  dsmzi_validation_free(v);
}
