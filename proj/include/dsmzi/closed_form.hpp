#pragma once

#include <array>

#include "dsmzi/types.hpp"

// Analytic photon-number moments of the dual-squeezing interferometer for
// the input |alpha, 0>, detected by photon-number difference N- = a'a - b'b.
//
// All functions take phi as given (no reduction mod 2pi) and refuse
// squeezing above kMaxSqueezing.
namespace dsmzi::closed_form {

// Balanced configuration r1 = r2 = r.
double expected_ndiff_balanced(double alpha, double r, double phi);
double variance_ndiff_balanced(double alpha, double r, double phi);
double total_photons_balanced(double alpha, double r, double phi);

// General r1 != r2. Reduce exactly to the balanced forms at r1 = r2 and to
// the conventional scheme at r2 = 0.
double expected_ndiff_unbalanced(double alpha, double r1, double r2,
                                 double phi);
double total_photons_unbalanced(double alpha, double r1, double r2,
                                double phi);
// The cos^4(phi/2) coefficient is (1/2)sinh^2(2 r2) + 2 sinh^2(2r1 - r2)cosh^2(r2);
// this is the form that agrees with the Gaussian and Fock evaluations.
double variance_ndiff_unbalanced(double alpha, double r1, double r2,
                                 double phi);

// d<N->/dphi, analytic.
double derivative_ndiff_unbalanced(double alpha, double r1, double r2,
                                   double phi);

// Coefficients of the Heisenberg-picture decomposition
//   N- = h_minus Jz + h1 Jy + h3 (K_bx - K_ax)
//   N+ = h_plus  Kz + h2 Ky + h3 (K_bx + K_ax) - 1
struct BalancedCoefficients {
  double h_plus = 0.0;
  double h_minus = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
};

BalancedCoefficients balanced_coefficients(double r, double phi);

// k[i] holds k_{i+1}; plus/minus select the sign branch.
//   N- = k1+ Kz + k2- Jz + k3- K_ax + k4- K_bx + k5+ Jy + k6- Ky
//   N+ = k2+ Kz + k1- Jz + k3+ K_ax + k4+ K_bx + k5- Jy + k6+ Ky - 1
struct UnbalancedCoefficients {
  std::array<double, 6> plus{};
  std::array<double, 6> minus{};

  double k_plus(int i) const { return plus.at(static_cast<std::size_t>(i - 1)); }
  double k_minus(int i) const { return minus.at(static_cast<std::size_t>(i - 1)); }
};

UnbalancedCoefficients unbalanced_coefficients(double r1, double r2,
                                               double phi);

// Expectation values of the SU(2) / SU(1,1) generators on the input state.
struct GeneratorMeans {
  double jy = 0.0;
  double jz = 0.0;
  double kz = 0.0;
  double ky = 0.0;
  double k_ax = 0.0;
  double k_bx = 0.0;

  // |alpha, 0>: <Jz> = <K_ax> = alpha^2/2, <Kz> = (alpha^2 + 1)/2, rest 0.
  static GeneratorMeans coherent_vacuum(double alpha);
};

double assemble_ndiff(const BalancedCoefficients& h, const GeneratorMeans& g);
double assemble_total(const BalancedCoefficients& h, const GeneratorMeans& g);
double assemble_ndiff(const UnbalancedCoefficients& k, const GeneratorMeans& g);
double assemble_total(const UnbalancedCoefficients& k, const GeneratorMeans& g);

// Moments (and derivative) for a full configuration; eta is ignored.
MomentSet moments(const InterferometerConfig& cfg);

}  // namespace dsmzi::closed_form
