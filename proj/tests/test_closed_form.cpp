#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dsmzi/closed_form.hpp"
#include "dsmzi/gaussian.hpp"

using namespace dsmzi;
using namespace dsmzi::closed_form;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt10 = std::sqrt(10.0);

// Frozen from a truncated-Fock run at 121 levels (independent prototype).
struct OracleRow {
  double alpha, r1, r2, phi, mean, total, var;
};
const OracleRow kFockRows[] = {
    {1, 0.6, 0.3, kPi / 2, -0.301128117485, 1.706455901147, 1.015896296521},
    {1, 0.6, 0.9, 2.0, -1.312928748046, 2.965727493320, 5.137075013870},
    {1, 0.5, 0.0, kPi / 2, 0.0, 1.271540317408, 0.639419758579},
};
}  // namespace

TEST(Balanced, ExpectedDifference) {
  EXPECT_NEAR(expected_ndiff_balanced(kSqrt10, 0, 0), -10, 1e-12);
  EXPECT_NEAR(expected_ndiff_balanced(2, 1.5, kPi), 4, 1e-12);
  EXPECT_NEAR(expected_ndiff_balanced(1, 0.5, kPi / 2), -0.859140914229523, 1e-12);
}

TEST(Balanced, Variance) {
  for (double phi : {0.1, 1.0, 2.0, 3.0}) EXPECT_NEAR(variance_ndiff_balanced(3, 0, phi), 9, 1e-12);
  EXPECT_NEAR(variance_ndiff_balanced(0, 1, kPi), 0, 1e-12);
  EXPECT_NEAR(variance_ndiff_balanced(1, 0.5, kPi / 2), 2.354937889296216, 1e-12);
}

TEST(Balanced, TotalPhotons) {
  EXPECT_NEAR(total_photons_balanced(1.7, 0.8, kPi), 1.7 * 1.7, 1e-12);
  EXPECT_NEAR(total_photons_balanced(0, 1, 0), 2.762195691083631, 1e-12);
  for (double phi : {0.2, 1.3, 2.9}) EXPECT_NEAR(total_photons_balanced(2, 0, phi), 4, 1e-12);
}

TEST(Balanced, ClassicalLimit) {
  for (double phi : {0.2, 1.0, 2.2}) {
    EXPECT_NEAR(expected_ndiff_balanced(1.5, 0, phi), -2.25 * std::cos(phi), 1e-12);
    EXPECT_NEAR(variance_ndiff_balanced(1.5, 0, phi), 2.25, 1e-12);
  }
}

TEST(Coefficients, BalancedValues) {
  const auto h = balanced_coefficients(0, kPi / 2);
  EXPECT_NEAR(h.h_plus, 2, 1e-15);
  EXPECT_NEAR(h.h_minus, 0, 1e-15);
  EXPECT_NEAR(h.h1, 2, 1e-15);
  EXPECT_NEAR(h.h2, 0, 1e-15);
  EXPECT_NEAR(h.h3, 0, 1e-15);
  EXPECT_NEAR(balanced_coefficients(1, 0).h3, 7.253720815694038, 1e-12);
}

TEST(Coefficients, BalancedInvariantsAndAssembly) {
  for (double r : {0.0, 0.5, 1.5})
    for (double phi : {0.3, 1.5, 2.9}) {
      const auto h = balanced_coefficients(r, phi);
      EXPECT_GE(h.h_plus, std::abs(h.h_minus));
      EXPECT_GE(h.h3, 0);
      const double a = 1.4;
      const auto g = GeneratorMeans::coherent_vacuum(a);
      EXPECT_NEAR(a * a * (h.h_minus - h.h3) / 2, expected_ndiff_balanced(a, r, phi), 1e-12);
      EXPECT_NEAR(assemble_ndiff(h, g), expected_ndiff_balanced(a, r, phi), 1e-12);
      EXPECT_NEAR(assemble_total(h, g), total_photons_balanced(a, r, phi), 1e-12);
    }
}

TEST(Coefficients, UnbalancedReductions) {
  const auto k = unbalanced_coefficients(0.7, 0.7, 1.1);
  const auto h = balanced_coefficients(0.7, 1.1);
  EXPECT_NEAR(k.k_plus(1), 0, 1e-15);
  EXPECT_NEAR(k.k_minus(1), 0, 1e-15);
  EXPECT_NEAR(k.k_plus(3), h.h3, 1e-14);
  EXPECT_NEAR(k.k_minus(3), -h.h3, 1e-14);
  EXPECT_NEAR(k.k_plus(4), h.h3, 1e-14);
  EXPECT_NEAR(k.k_minus(4), h.h3, 1e-14);
  EXPECT_NEAR(k.k_plus(5), h.h1, 1e-14);
}

TEST(Coefficients, UnbalancedAssembly) {
  for (double a : {0.5, 1.3})
    for (double r1 : {0.0, 0.6, 1.4})
      for (double r2 : {0.0, 0.4, 1.9})
        for (double phi : {0.4, 1.7, 2.8}) {
          const auto k = unbalanced_coefficients(r1, r2, phi);
          const auto g = GeneratorMeans::coherent_vacuum(a);
          EXPECT_NEAR(assemble_ndiff(k, g), expected_ndiff_unbalanced(a, r1, r2, phi), 1e-11);
          EXPECT_NEAR(assemble_total(k, g), total_photons_unbalanced(a, r1, r2, phi), 1e-11);
        }
  // the two decompositions agree at r1 = r2
  const auto g = GeneratorMeans::coherent_vacuum(1.1);
  EXPECT_NEAR(assemble_ndiff(unbalanced_coefficients(0.8, 0.8, 1.2), g),
              assemble_ndiff(balanced_coefficients(0.8, 1.2), g), 1e-12);
}

TEST(Unbalanced, ReducesToBalanced) {
  double worst = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int l = 0; l < 10; ++l) {
        const double a = 0.3 * i, r = 0.25 * j, phi = 0.1 + 0.3 * l;
        worst = std::max({worst,
                          std::abs(expected_ndiff_unbalanced(a, r, r, phi) -
                                   expected_ndiff_balanced(a, r, phi)),
                          std::abs(total_photons_unbalanced(a, r, r, phi) -
                                   total_photons_balanced(a, r, phi)),
                          std::abs(variance_ndiff_unbalanced(a, r, r, phi) -
                                   variance_ndiff_balanced(a, r, phi)) /
                              std::max(1.0, variance_ndiff_balanced(a, r, phi))});
      }
  EXPECT_LT(worst, 1e-12);
}

TEST(Unbalanced, ConventionalScheme) {
  for (double r1 : {0.3, 1.0})
    for (double phi : {0.5, 2.0}) {
      const double a = 1.2;
      const double sr = std::pow(std::sinh(r1), 2);
      EXPECT_NEAR(expected_ndiff_unbalanced(a, r1, 0, phi), -(a * a - sr) * std::cos(phi), 1e-12);
      EXPECT_NEAR(total_photons_unbalanced(a, r1, 0, phi), a * a + sr, 1e-12);
    }
}

TEST(Unbalanced, MatchesFockOracle) {
  for (const auto& row : kFockRows) {
    EXPECT_NEAR(expected_ndiff_unbalanced(row.alpha, row.r1, row.r2, row.phi), row.mean, 1e-8);
    EXPECT_NEAR(total_photons_unbalanced(row.alpha, row.r1, row.r2, row.phi), row.total, 1e-8);
    EXPECT_NEAR(variance_ndiff_unbalanced(row.alpha, row.r1, row.r2, row.phi), row.var, 1e-7);
  }
}

// The printed cos^4 coefficient would make this variance negative.
TEST(Unbalanced, VarianceCoefficientCorrection) {
  EXPECT_GT(variance_ndiff_unbalanced(0, 0.5, 0, 0.3), 0);
  const InterferometerConfig c{0, 0.5, 0, 0.3, 1};
  EXPECT_NEAR(variance_ndiff_unbalanced(0, 0.5, 0, 0.3),
              gaussian::gaussian_photon_moments(c).n_minus_var, 1e-12);
}

TEST(Physicality, GridHolds) {
  for (double a : {0.0, 0.5, 2.0, kSqrt10})
    for (double r1 = 0; r1 <= 2.5; r1 += 0.25)
      for (double r2 : {0.0, r1 / 2, r1, r1 + 0.5})
        for (double phi = 0.1; phi < kPi; phi += 0.3) {
          const MomentSet m = moments({a, r1, r2, phi, 1});
          EXPECT_TRUE(m.is_physical()) << a << " " << r1 << " " << r2 << " " << phi;
        }
}

TEST(Signal, NonVanishingAtEqualIntensity) {
  const double r = std::asinh(kSqrt10);
  EXPECT_NEAR(derivative_ndiff_unbalanced(kSqrt10, r, 0, kPi / 2), 0, 1e-12);
  for (double phi = 0.05; phi < kPi; phi += 0.1)
    EXPECT_GT(std::abs(derivative_ndiff_unbalanced(kSqrt10, r, r, phi)), 1e-3);
}

TEST(Guards, RefusesOverflowAndBadInput) {
  try {
    expected_ndiff_balanced(1, 21, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverflow);
  }
  EXPECT_THROW(expected_ndiff_balanced(-1, 0.1, 1), Error);
  EXPECT_THROW(moments({1, 0.1, 0.1, 1, 0}), Error);
  EXPECT_THROW(moments({1, 0.1, 0.1, NAN, 1}), Error);
}
