#include "dsmzi/closed_form.hpp"

#include <cmath>

namespace dsmzi::closed_form {
namespace {

struct HalfAngle {
  double s2;  // sin^2(phi/2)
  double c2;  // cos^2(phi/2)
  double sin_phi;

  explicit HalfAngle(double phi) {
    const double s = std::sin(0.5 * phi);
    const double c = std::cos(0.5 * phi);
    s2 = s * s;
    c2 = c * c;
    sin_phi = std::sin(phi);
  }
};

void check(double alpha, double r1, double r2, double phi) {
  require_amplitude(alpha);
  require_squeezing(r1, "r1");
  require_squeezing(r2, "r2");
  require_finite(phi, "phi");
}

double sq(double x) { return x * x; }

}  // namespace

double expected_ndiff_balanced(double alpha, double r, double phi) {
  check(alpha, r, r, phi);
  const HalfAngle h(phi);
  return alpha * alpha * (h.s2 - h.c2 * std::exp(2.0 * r));
}

double variance_ndiff_balanced(double alpha, double r, double phi) {
  check(alpha, r, r, phi);
  const HalfAngle h(phi);
  const double signal = h.s2 - h.c2 * std::exp(2.0 * r);
  return alpha * alpha *
             (signal * signal + sq(h.sin_phi) * sq(std::cosh(r))) +
         sq(h.c2) * sq(std::sinh(2.0 * r));
}

double total_photons_balanced(double alpha, double r, double phi) {
  check(alpha, r, r, phi);
  const HalfAngle h(phi);
  return alpha * alpha * (h.s2 + h.c2 * std::exp(2.0 * r)) +
         h.c2 * (std::cosh(2.0 * r) - 1.0);
}

double expected_ndiff_unbalanced(double alpha, double r1, double r2,
                                 double phi) {
  check(alpha, r1, r2, phi);
  const HalfAngle h(phi);
  return alpha * alpha * (h.s2 - h.c2 * std::exp(2.0 * r2)) -
         h.s2 * sq(std::sinh(r1 - r2)) +
         0.5 * h.c2 * (std::cosh(2.0 * r1) - std::cosh(2.0 * r2));
}

double total_photons_unbalanced(double alpha, double r1, double r2,
                                double phi) {
  check(alpha, r1, r2, phi);
  const HalfAngle h(phi);
  return alpha * alpha * (h.s2 + h.c2 * std::exp(2.0 * r2)) +
         h.s2 * sq(std::sinh(r1 - r2)) +
         0.5 * h.c2 * (std::cosh(2.0 * r1) + std::cosh(2.0 * r2) - 2.0);
}

double variance_ndiff_unbalanced(double alpha, double r1, double r2,
                                 double phi) {
  check(alpha, r1, r2, phi);
  const HalfAngle h(phi);
  const double ch2 = std::cosh(r2);
  const double coherent =
      sq(std::exp(2.0 * r2) * h.c2 - h.s2) +
      0.25 * sq(std::exp(2.0 * r2 - r1) + std::exp(-r1)) * sq(h.sin_phi);
  const double quartic = 0.5 * sq(std::sinh(2.0 * r2)) +
                         2.0 * sq(std::sinh(2.0 * r1 - r2)) * sq(ch2);
  const double quadratic = sq(ch2) - std::cosh(4.0 * r1 - 3.0 * r2) * ch2;
  return alpha * alpha * coherent + quartic * sq(h.c2) + quadratic * h.c2 +
         sq(std::sinh(r1 - r2)) * sq(ch2) * sq(h.sin_phi) +
         0.25 * (std::cosh(4.0 * (r1 - r2)) - 1.0);
}

double derivative_ndiff_unbalanced(double alpha, double r1, double r2,
                                   double phi) {
  check(alpha, r1, r2, phi);
  // d sin^2(phi/2)/dphi = -d cos^2(phi/2)/dphi = sin(phi)/2
  return 0.5 * std::sin(phi) *
         (alpha * alpha * (1.0 + std::exp(2.0 * r2)) -
          sq(std::sinh(r1 - r2)) -
          0.5 * (std::cosh(2.0 * r1) - std::cosh(2.0 * r2)));
}

BalancedCoefficients balanced_coefficients(double r, double phi) {
  require_squeezing(r, "r");
  require_finite(phi, "phi");
  const HalfAngle h(phi);
  const double c2r = std::cosh(2.0 * r);
  return {
      .h_plus = 2.0 * (h.s2 + h.c2 * c2r),
      .h_minus = 2.0 * (h.s2 - h.c2 * c2r),
      .h1 = 2.0 * h.sin_phi * std::cosh(r),
      .h2 = 2.0 * h.sin_phi * std::sinh(r),
      .h3 = 2.0 * h.c2 * std::sinh(2.0 * r),
  };
}

UnbalancedCoefficients unbalanced_coefficients(double r1, double r2,
                                               double phi) {
  require_squeezing(r1, "r1");
  require_squeezing(r2, "r2");
  require_finite(phi, "phi");
  const HalfAngle h(phi);
  const double d = r1 - r2;
  UnbalancedCoefficients k;
  for (int branch = 0; branch < 2; ++branch) {
    const double sign = branch == 0 ? 1.0 : -1.0;
    auto& out = branch == 0 ? k.plus : k.minus;
    out[0] = -2.0 * h.s2 * sq(std::sinh(d)) +
             sign * h.c2 * (std::cosh(2.0 * r1) - std::cosh(2.0 * r2));
    out[1] = 2.0 * h.s2 * sq(std::cosh(d)) +
             sign * h.c2 * (std::cosh(2.0 * r1) + std::cosh(2.0 * r2));
    out[2] = sign * 2.0 * h.c2 * std::sinh(2.0 * r2);
    out[3] = 2.0 * (h.c2 * std::sinh(2.0 * r1) +
                    sign * h.s2 * std::sinh(2.0 * d));
    out[4] = h.sin_phi * (std::cosh(r1) + sign * std::cosh(2.0 * r2 - r1));
    out[5] = h.sin_phi * (std::sinh(r1) + sign * std::sinh(2.0 * r2 - r1));
  }
  return k;
}

GeneratorMeans GeneratorMeans::coherent_vacuum(double alpha) {
  const double a2 = alpha * alpha;
  GeneratorMeans g;
  g.jz = 0.5 * a2;
  g.k_ax = 0.5 * a2;
  g.kz = 0.5 * (a2 + 1.0);
  return g;
}

double assemble_ndiff(const BalancedCoefficients& h, const GeneratorMeans& g) {
  return h.h_minus * g.jz + h.h1 * g.jy + h.h3 * (g.k_bx - g.k_ax);
}

double assemble_total(const BalancedCoefficients& h, const GeneratorMeans& g) {
  return h.h_plus * g.kz + h.h2 * g.ky + h.h3 * (g.k_bx + g.k_ax) - 1.0;
}

double assemble_ndiff(const UnbalancedCoefficients& k,
                      const GeneratorMeans& g) {
  return k.k_plus(1) * g.kz + k.k_minus(2) * g.jz + k.k_minus(3) * g.k_ax +
         k.k_minus(4) * g.k_bx + k.k_plus(5) * g.jy + k.k_minus(6) * g.ky;
}

double assemble_total(const UnbalancedCoefficients& k,
                      const GeneratorMeans& g) {
  return k.k_plus(2) * g.kz + k.k_minus(1) * g.jz + k.k_plus(3) * g.k_ax +
         k.k_plus(4) * g.k_bx + k.k_minus(5) * g.jy + k.k_plus(6) * g.ky -
         1.0;
}

MomentSet moments(const InterferometerConfig& cfg) {
  cfg.validate();
  MomentSet m;
  m.path = MomentPath::kClosedForm;
  if (cfg.is_balanced()) {
    m.n_minus_mean = expected_ndiff_balanced(cfg.alpha, cfg.r1, cfg.phi);
    m.n_plus_mean = total_photons_balanced(cfg.alpha, cfg.r1, cfg.phi);
    m.n_minus_var = variance_ndiff_balanced(cfg.alpha, cfg.r1, cfg.phi);
  } else {
    m.n_minus_mean =
        expected_ndiff_unbalanced(cfg.alpha, cfg.r1, cfg.r2, cfg.phi);
    m.n_plus_mean = total_photons_unbalanced(cfg.alpha, cfg.r1, cfg.r2, cfg.phi);
    m.n_minus_var =
        variance_ndiff_unbalanced(cfg.alpha, cfg.r1, cfg.r2, cfg.phi);
  }
  m.dn_minus_dphi =
      derivative_ndiff_unbalanced(cfg.alpha, cfg.r1, cfg.r2, cfg.phi);
  return m;
}

}  // namespace dsmzi::closed_form
