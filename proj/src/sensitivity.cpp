#include "dsmzi/sensitivity.hpp"

#include <cmath>
#include <limits>

#include "dsmzi/closed_form.hpp"

namespace dsmzi::sensitivity {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SensitivityReport finish(const InterferometerConfig& cfg, double var,
                         double n_plus, double slope) {
  SensitivityReport rep;
  rep.config = cfg;
  rep.n_bar = n_bar(cfg.alpha, cfg.r1);
  rep.delta_phi_bound = qcrb_bound(cfg.alpha, cfg.r1);
  const double noise = var + (1.0 - cfg.eta) / cfg.eta * n_plus;
  if (std::abs(slope) < divergence_threshold(cfg.alpha)) {
    rep.diverged = true;
    rep.delta_phi_detection = kInf;
    rep.scaled = kInf;
    rep.saturability = 0.0;
    return rep;
  }
  rep.delta_phi_detection = std::sqrt(std::max(noise, 0.0)) / std::abs(slope);
  rep.scaled = std::sqrt(rep.n_bar) * rep.delta_phi_detection;
  rep.saturability = std::isfinite(rep.delta_phi_bound)
                         ? rep.delta_phi_bound / rep.delta_phi_detection
                         : 0.0;
  return rep;
}

}  // namespace

double divergence_threshold(double alpha) {
  return 1e-12 * std::max(1.0, alpha * alpha);
}

double dndiff_dphi(const InterferometerConfig& cfg) {
  cfg.validate();
  return closed_form::derivative_ndiff_unbalanced(cfg.alpha, cfg.r1, cfg.r2,
                                                  cfg.phi);
}

SensitivityReport phase_sensitivity(const InterferometerConfig& cfg) {
  InterferometerConfig ideal = cfg;
  ideal.eta = 1.0;
  return phase_sensitivity_noisy(ideal);
}

SensitivityReport phase_sensitivity_noisy(const InterferometerConfig& cfg) {
  return report_from_moments(cfg, closed_form::moments(cfg));
}

SensitivityReport report_from_moments(const InterferometerConfig& cfg,
                                      const MomentSet& m) {
  cfg.validate();
  if (!m.dn_minus_dphi) {
    throw Error(ErrorCode::kInvalidParameter,
                "moment set carries no phase derivative");
  }
  return finish(cfg, m.n_minus_var, m.n_plus_mean, *m.dn_minus_dphi);
}

double balanced_g(double alpha, double r, double phi) {
  require_amplitude(alpha);
  require_squeezing(r, "r");
  require_finite(phi, "phi");
  const double s2 = std::pow(std::sin(0.5 * phi), 2);
  const double c2 = std::pow(std::cos(0.5 * phi), 2);
  const double den = std::pow(std::cosh(r) * std::sin(phi), 2);
  const double signal = std::exp(2.0 * r) * c2 - s2;
  return std::sqrt(1.0 + signal * signal / den +
                   std::pow(std::sinh(2.0 * r) * c2, 2) / (alpha * alpha * den));
}

double balanced_sensitivity_formula(double alpha, double r, double phi) {
  const double g = balanced_g(alpha, r, phi);
  return 2.0 * g * std::cosh(r) / (alpha * (1.0 + std::exp(2.0 * r)));
}

double qcrb_bound(double alpha, double r1) {
  require_amplitude(alpha);
  require_squeezing(r1, "r1");
  const double f = alpha * alpha * std::exp(2.0 * r1) + std::pow(std::sinh(r1), 2);
  return f > 0.0 ? 1.0 / std::sqrt(f) : kInf;
}

double n_bar(double alpha, double r1) {
  return alpha * alpha + std::pow(std::sinh(r1), 2);
}

double scaled_sensitivity(const SensitivityReport& report) {
  if (report.diverged) return kInf;
  return std::sqrt(report.n_bar) * report.delta_phi_detection;
}

double saturability(const InterferometerConfig& cfg) {
  return phase_sensitivity_noisy(cfg).saturability;
}

double detection_noise_ratio(const InterferometerConfig& cfg) {
  const MomentSet m = closed_form::moments(cfg);
  return (1.0 - cfg.eta) / cfg.eta * m.n_plus_mean / m.n_minus_var;
}

}  // namespace dsmzi::sensitivity
