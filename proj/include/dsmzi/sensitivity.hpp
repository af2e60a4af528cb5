#pragma once

#include "dsmzi/types.hpp"

// Error-propagation phase sensitivity for photon-number-difference detection,
//   dphi = sqrt(Var(N-) + (1 - eta)/eta <N+>) / |d<N->/dphi|,
// compared against the quantum Cramer-Rao bound of the input state.
namespace dsmzi::sensitivity {

struct SensitivityReport {
  double delta_phi_detection = 0.0;  // +inf when diverged
  double delta_phi_bound = 0.0;      // +inf when there are no photons
  double scaled = 0.0;               // sqrt(n_bar) * delta_phi_detection
  double saturability = 0.0;         // bound / detection, 0 when diverged
  double n_bar = 0.0;                // alpha^2 + sinh^2 r1
  InterferometerConfig config;
  bool diverged = false;
};

// |d<N->/dphi| below this is treated as a vanishing signal.
double divergence_threshold(double alpha);

// Analytic d<N->/dphi.
double dndiff_dphi(const InterferometerConfig& cfg);

// Ideal detection; cfg.eta is ignored and reported as 1.
SensitivityReport phase_sensitivity(const InterferometerConfig& cfg);
// Detection efficiency cfg.eta on both detectors.
SensitivityReport phase_sensitivity_noisy(const InterferometerConfig& cfg);
// Assemble a report from an externally computed moment set (any path).
// Requires m.dn_minus_dphi.
SensitivityReport report_from_moments(const InterferometerConfig& cfg,
                                      const MomentSet& m);

// Balanced closed form g e^{-r} / alpha, g as in the balanced derivation.
double balanced_g(double alpha, double r, double phi);
double balanced_sensitivity_formula(double alpha, double r, double phi);

// 1/sqrt(alpha^2 e^{2 r1} + sinh^2 r1); +inf at alpha = r1 = 0.
double qcrb_bound(double alpha, double r1);
double n_bar(double alpha, double r1);

double scaled_sensitivity(const SensitivityReport& report);
double saturability(const InterferometerConfig& cfg);

// ((1 - eta)/eta <N+>) / Var(N-): relative weight of the detection noise.
double detection_noise_ratio(const InterferometerConfig& cfg);

}  // namespace dsmzi::sensitivity
