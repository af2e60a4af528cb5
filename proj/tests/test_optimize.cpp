#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dsmzi/optimize.hpp"
#include "dsmzi/sensitivity.hpp"

using namespace dsmzi;
using namespace dsmzi::optimize;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt10 = std::sqrt(10.0);
const double kRStar = 1.868551121099462;

double dphi(double a, double r1, double r2, double phi, double eta = 1.0) {
  return sensitivity::phase_sensitivity_noisy({a, r1, r2, phi, eta}).delta_phi_detection;
}
}  // namespace

TEST(Phase, LocalMinimumCertificate) {
  for (double r : {0.3, 1.0, 1.87, 2.5})
    for (double eta : {1.0, 0.8}) {
      const PhaseOptimum o = optimal_phase(kSqrt10, r, r, eta);
      const double f = o.report.delta_phi_detection;
      EXPECT_LE(f, dphi(kSqrt10, r, r, o.phi_opt - 1e-4, eta));
      EXPECT_LE(f, dphi(kSqrt10, r, r, o.phi_opt + 1e-4, eta));
      // no grid point beats the refined optimum
      for (int i = 0; i < 401; ++i) {
        const double phi = 0.01 + (kPi - 1e-6 - 0.01) * i / 400.0;
        EXPECT_LE(f, dphi(kSqrt10, r, r, phi, eta) * (1 + 1e-12));
      }
    }
}

TEST(Phase, CoherentOnlyOptimumAtQuarterTurn) {
  const PhaseOptimum o = optimal_phase(2.0, 0, 0, 1.0);
  EXPECT_NEAR(o.phi_opt, kPi / 2, 1e-4);
  EXPECT_NEAR(o.report.delta_phi_detection, 0.5, 1e-9);
}

TEST(Phase, OptimumMovesTowardPi) {
  double prev = 0;
  for (double r = 0.25; r <= 3.0001; r += 0.25) {
    const double phi = optimal_phase(kSqrt10, r, r, 1.0).phi_opt;
    EXPECT_GT(phi, prev) << r;
    prev = phi;
  }
}

TEST(Phase, AsymptoticForm) {
  EXPECT_NEAR(asymptotic_phase_opt(2), 2.873760101378823, 1e-12);
  EXPECT_NEAR(asymptotic_phase_opt(0), 1.743222324507746, 1e-12);
  EXPECT_NEAR(optimal_phase(kSqrt10, 3.0, 3.0, 1.0).phi_opt, asymptotic_phase_opt(3.0), 2e-3);
}

TEST(Phase, AllDivergedThrows) {
  try {
    optimal_phase(0, 0, 0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAllDiverged);
  }
  EXPECT_THROW(optimal_phase(1, 0.5, 0.5, 1.0, {2.0, 1.0, 401, 1e-10}), Error);
}

TEST(R2, BeatsBalancedAndConventional) {
  for (double r1 : {0.5, 1.0, 1.87})
    for (double eta : {1.0, 0.8}) {
      const R2Optimum o = optimal_r2(kSqrt10, r1, eta);
      EXPECT_LE(o.report.delta_phi_detection,
                optimal_phase(kSqrt10, r1, r1, eta).report.delta_phi_detection * (1 + 1e-9));
      EXPECT_LE(o.report.delta_phi_detection,
                optimal_phase(kSqrt10, r1, 0, eta).report.delta_phi_detection * (1 + 1e-9));
      EXPECT_GE(o.r2_opt, 0);
      EXPECT_LE(o.r2_opt, r1 + 3);
      EXPECT_NEAR(o.report.config.r2, o.r2_opt, 0);
    }
}

TEST(Split, SatisfiesConstraints) {
  for (double n : {1.0, 10.0, 100.0}) {
    const AlphaSplit s = optimal_alpha_split(n);
    EXPECT_NEAR(s.alpha * s.alpha + std::pow(std::sinh(s.r), 2), n, 1e-9 * n);
    EXPECT_LT(std::abs(alpha_split_residual(s)), 1e-9 * n);
    EXPECT_GT(s.r, 0);
  }
  EXPECT_THROW(optimal_alpha_split(0), Error);
}

TEST(Plateau, Values) {
  const Plateau p = plateau_sensitivity(1.87);
  EXPECT_NEAR(p.scaled, 0.238065987081465, 1e-12);
  EXPECT_NEAR(p.phi, 3.038933799603676, 1e-12);
}

TEST(Sweep, GridAndFlags) {
  SweepSpec spec;
  spec.variable = SweepVariable::kPhi;
  spec.lo = 0.5;
  spec.hi = 2.5;
  spec.points = 5;
  spec.fixed = InterferometerConfig::caves(kSqrt10, kRStar, 0);
  const auto curve = sweep(spec);
  ASSERT_EQ(curve.size(), 5u);
  EXPECT_EQ(curve.front().x, 0.5);
  EXPECT_EQ(curve.back().x, 2.5);
  EXPECT_NEAR(curve[2].x, 1.5, 1e-15);
  // the conventional scheme at equal intensities has no signal anywhere
  for (const auto& p : curve) {
    EXPECT_TRUE(p.report.diverged);
    EXPECT_FALSE(p.phi_opt.has_value());
  }
}

TEST(Sweep, DivergedPointKeptWhenOptimising) {
  SweepSpec spec;
  spec.variable = SweepVariable::kAlpha;
  spec.lo = 0;
  spec.hi = 1;
  spec.points = 2;
  spec.optimize_phi = true;
  const auto curve = sweep(spec);
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_TRUE(curve[0].report.diverged);
  EXPECT_TRUE(std::isinf(curve[0].report.delta_phi_detection));
  EXPECT_FALSE(curve[1].report.diverged);
}

TEST(Sweep, RejectsBadSpecs) {
  SweepSpec spec;
  spec.points = 1;
  EXPECT_THROW(spec.validate(), Error);
  spec.points = 3;
  spec.lo = 1;
  spec.hi = 1;
  EXPECT_THROW(spec.validate(), Error);
  spec.hi = 2;
  spec.variable = SweepVariable::kR2;
  spec.optimize_r2 = true;
  EXPECT_THROW(spec.validate(), Error);
  spec.variable = SweepVariable::kPhi;
  spec.optimize_r2 = false;
  spec.optimize_phi = true;
  EXPECT_THROW(spec.validate(), Error);
  spec.optimize_phi = false;
  spec.threads = 0;
  EXPECT_THROW(spec.validate(), Error);
}

TEST(Sweep, DeterministicAcrossThreads) {
  SweepSpec spec;
  spec.variable = SweepVariable::kR;
  spec.lo = 0;
  spec.hi = 2.5;
  spec.points = 26;
  spec.fixed = {kSqrt10, 0, 0, 0, 0.9};
  spec.optimize_r2 = true;
  const auto a = sweep(spec);
  spec.threads = 4;
  const auto b = sweep(spec);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].report.delta_phi_detection, b[i].report.delta_phi_detection);
    EXPECT_EQ(*a[i].r2_opt, *b[i].r2_opt);
    EXPECT_EQ(*a[i].phi_opt, *b[i].phi_opt);
  }
}

TEST(Sweep, ParallelForPropagatesErrors) {
  EXPECT_THROW(parallel_for(16, 4,
                            [](int i) {
                              if (i == 7) throw Error(ErrorCode::kOverflow, "boom");
                            }),
               Error);
}

TEST(Offset, FitAndErrors) {
  std::vector<CurvePoint> curve;
  for (int i = 0; i < 6; ++i) {
    CurvePoint p;
    p.x = 0.5 * i;
    p.r2_opt = p.x + 0.3 + (i % 2 ? 0.01 : -0.01);
    curve.push_back(p);
  }
  const OffsetFit fit = fit_offset(curve);
  EXPECT_EQ(fit.points, 3);  // x = 1.5, 2.0, 2.5
  EXPECT_NEAR(fit.delta, 0.3 + 0.01 / 3, 1e-12);
  EXPECT_GT(fit.residual, 0);
  try {
    fit_offset(curve, 1.9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}
