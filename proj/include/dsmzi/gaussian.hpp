#pragma once

#include <Eigen/Core>

#include "dsmzi/types.hpp"

// Two-mode Gaussian phase-space description of the interferometer.
//
// Quadratures are ordered (x_a, p_a, x_b, p_b). Covariance matrices are in
// shot-noise units (vacuum = identity); mean vectors are in units of
// x = (a + a')/sqrt(2), so a coherent amplitude alpha sits at sqrt(2) alpha.
// The symplectic maps are linear, so the mixed units only matter when photon
// numbers are read off (see mode_intensity / gaussian_photon_moments).
namespace dsmzi::gaussian {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

// Standard symplectic form, block-diagonal ((0, 1), (-1, 0)) per mode.
const Mat4& symplectic_form();

struct SymplecticTransform {
  Mat4 matrix = Mat4::Identity();
  Vec4 displacement = Vec4::Zero();

  // max |F Omega F^T - Omega|
  double symplectic_defect() const;
};

// identity on mode a, diag(e^r, e^-r) on mode b
SymplecticTransform symplectic_squeezer(double r);
// 50:50 beam splitter, x_a -> (x_a + x_b)/sqrt2, x_b -> (x_b - x_a)/sqrt2
SymplecticTransform symplectic_beamsplitter();
// rotation by +phi/2 on mode a and -phi/2 on mode b
SymplecticTransform symplectic_phase(double phi);

struct GaussianState {
  Mat4 cov = Mat4::Identity();
  Vec4 mean = Vec4::Zero();

  static GaussianState vacuum() { return {}; }
  // |alpha, 0>
  static GaussianState coherent(double alpha);

  // Symmetric (1e-12 relative), positive definite (min eigenvalue > -1e-10
  // relative) and sigma + i Omega >= 0 within the same tolerance.
  bool is_valid() const;
  // Throws Error(kNumericalDegeneracy) naming the violated condition.
  void validate() const;
};

GaussianState evolve(const GaussianState& state, const SymplecticTransform& t);

// S2(r2) B U(phi) B S1(r1) applied to |alpha, 0>. eta is ignored.
GaussianState ds_mzi_output(const InterferometerConfig& cfg);
// The same chain without the output squeezer.
GaussianState mzi_output(double alpha, double r1, double phi);

enum class Mode { kA, kB };

struct ModeMarginal {
  Mat2 cov = Mat2::Identity();
  Vec2 mean = Vec2::Zero();
  Mode mode = Mode::kA;
};

ModeMarginal mode_marginal(const GaussianState& state, Mode mode);

// Single-mode Gaussian density with covariance m.cov and mean m.mean.
// Throws Error(kNumericalDegeneracy) for a singular covariance.
double wigner_value(const ModeMarginal& m, double x, double p);

// Output intensity of one mode, I = <n> + 1/2.
double mode_intensity(const ModeMarginal& m);

// <N->, <N+>, Var(N-) from (cov, mean) via Gaussian fourth-moment
// factorisation. No derivative.
MomentSet gaussian_photon_moments(const GaussianState& state);

// Same, plus d<N->/dphi obtained by differentiating the symplectic chain.
MomentSet gaussian_photon_moments(const InterferometerConfig& cfg);

}  // namespace dsmzi::gaussian
