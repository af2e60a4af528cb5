#include "dsmzi/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace dsmzi::gaussian {
namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kEigenTol = 1e-10;

Mat4 phase_matrix(double c, double s) {
  Mat4 f = Mat4::Zero();
  f(0, 0) = c;
  f(0, 1) = -s;
  f(1, 0) = s;
  f(1, 1) = c;
  f(2, 2) = c;
  f(2, 3) = s;
  f(3, 2) = -s;
  f(3, 3) = c;
  return f;
}

double scale_of(const Mat4& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

// Photon-number statistics of a Gaussian state. `cov` is in shot-noise
// units, so the symmetrised covariance of x = (a + a')/sqrt2 is cov / 2.
struct NumberStats {
  double mean_a, mean_b, var_a, var_b, cov_ab;
};

NumberStats number_stats(const GaussianState& s) {
  const Mat4 c = 0.5 * s.cov;
  const Mat2 caa = c.block<2, 2>(0, 0);
  const Mat2 cbb = c.block<2, 2>(2, 2);
  const Mat2 cab = c.block<2, 2>(0, 2);
  const Vec2 ma = s.mean.head<2>();
  const Vec2 mb = s.mean.tail<2>();
  NumberStats n{};
  n.mean_a = caa.trace() / 2.0 + ma.squaredNorm() / 2.0 - 0.5;
  n.mean_b = cbb.trace() / 2.0 + mb.squaredNorm() / 2.0 - 0.5;
  // Var(n) = tr(c^2)/2 - 1/4 + m^T c m; the -1/4 is the operator-ordering
  // correction of (x^2 + p^2)^2 against its Weyl symbol.
  n.var_a = (caa * caa).trace() / 2.0 - 0.25 + ma.dot(caa * ma);
  n.var_b = (cbb * cbb).trace() / 2.0 - 0.25 + mb.dot(cbb * mb);
  // Different modes commute, so the cross term is the plain Isserlis result.
  n.cov_ab = cab.squaredNorm() / 2.0 + ma.dot(cab * mb);
  return n;
}

}  // namespace

const Mat4& symplectic_form() {
  static const Mat4 omega = [] {
    Mat4 o = Mat4::Zero();
    o(0, 1) = 1.0;
    o(1, 0) = -1.0;
    o(2, 3) = 1.0;
    o(3, 2) = -1.0;
    return o;
  }();
  return omega;
}

double SymplecticTransform::symplectic_defect() const {
  const Mat4& omega = symplectic_form();
  return (matrix * omega * matrix.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticTransform symplectic_squeezer(double r) {
  require_finite(r, "r");
  SymplecticTransform t;
  t.matrix(2, 2) = std::exp(r);
  t.matrix(3, 3) = std::exp(-r);
  return t;
}

SymplecticTransform symplectic_beamsplitter() {
  const double h = 1.0 / std::numbers::sqrt2;
  SymplecticTransform t;
  t.matrix << h, 0, h, 0,
              0, h, 0, h,
             -h, 0, h, 0,
              0, -h, 0, h;
  return t;
}

SymplecticTransform symplectic_phase(double phi) {
  require_finite(phi, "phi");
  SymplecticTransform t;
  t.matrix = phase_matrix(std::cos(0.5 * phi), std::sin(0.5 * phi));
  return t;
}

GaussianState GaussianState::coherent(double alpha) {
  require_amplitude(alpha);
  GaussianState s;
  s.mean(0) = std::numbers::sqrt2 * alpha;
  return s;
}

bool GaussianState::is_valid() const {
  try {
    validate();
    return true;
  } catch (const Error&) {
    return false;
  }
}

void GaussianState::validate() const {
  if (!cov.allFinite() || !mean.allFinite()) {
    throw Error(ErrorCode::kNumericalDegeneracy, "non-finite Gaussian state");
  }
  const double scale = scale_of(cov);
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw Error(ErrorCode::kNumericalDegeneracy, "covariance not symmetric");
  }
  const Mat4 sym = 0.5 * (cov + cov.transpose());
  Eigen::SelfAdjointEigenSolver<Mat4> real_eig(sym, Eigen::EigenvaluesOnly);
  if (real_eig.eigenvalues().minCoeff() <= -kEigenTol * scale) {
    throw Error(ErrorCode::kNumericalDegeneracy,
                "covariance not positive definite");
  }
  const Eigen::Matrix4cd bona_fide =
      sym.cast<std::complex<double>>() +
      std::complex<double>(0.0, 1.0) * symplectic_form().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(bona_fide,
                                                      Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kEigenTol * scale) {
    throw Error(ErrorCode::kNumericalDegeneracy,
                "covariance violates the uncertainty relation");
  }
}

GaussianState evolve(const GaussianState& state, const SymplecticTransform& t) {
  GaussianState out;
  out.cov = t.matrix * state.cov * t.matrix.transpose();
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  out.mean = t.matrix * state.mean + t.displacement;
  return out;
}

GaussianState ds_mzi_output(const InterferometerConfig& cfg) {
  cfg.validate();
  const auto bs = symplectic_beamsplitter();
  GaussianState s = GaussianState::coherent(cfg.alpha);
  s = evolve(s, symplectic_squeezer(cfg.r1));
  s = evolve(s, bs);
  s = evolve(s, symplectic_phase(cfg.phi));
  s = evolve(s, bs);
  s = evolve(s, symplectic_squeezer(cfg.r2));
  return s;
}

GaussianState mzi_output(double alpha, double r1, double phi) {
  return ds_mzi_output({alpha, r1, 0.0, phi, 1.0});
}

ModeMarginal mode_marginal(const GaussianState& state, Mode mode) {
  const int off = mode == Mode::kA ? 0 : 2;
  ModeMarginal m;
  m.cov = state.cov.block<2, 2>(off, off);
  m.mean = state.mean.segment<2>(off);
  m.mode = mode;
  return m;
}

double wigner_value(const ModeMarginal& m, double x, double p) {
  const double det = m.cov.determinant();
  const double scale = std::max(1.0, m.cov.cwiseAbs().maxCoeff());
  if (!(det > 1e-14 * scale * scale) || !std::isfinite(det)) {
    throw Error(ErrorCode::kNumericalDegeneracy,
                "singular marginal covariance");
  }
  const Vec2 d = Vec2(x, p) - m.mean;
  const double quad = d.dot(m.cov.inverse() * d);
  return std::exp(-0.5 * quad) / (2.0 * std::numbers::pi * std::sqrt(det));
}

double mode_intensity(const ModeMarginal& m) {
  return m.cov.trace() / 4.0 + m.mean.squaredNorm() / 2.0;
}

MomentSet gaussian_photon_moments(const GaussianState& state) {
  const NumberStats n = number_stats(state);
  MomentSet out;
  out.path = MomentPath::kGaussian;
  out.n_minus_mean = n.mean_a - n.mean_b;
  out.n_plus_mean = n.mean_a + n.mean_b;
  out.n_minus_var = n.var_a + n.var_b - 2.0 * n.cov_ab;
  return out;
}

MomentSet gaussian_photon_moments(const InterferometerConfig& cfg) {
  const GaussianState s = ds_mzi_output(cfg);
  MomentSet out = gaussian_photon_moments(s);

  // d/dphi through the phase element only: F = F2 U(phi) F1.
  const Mat4 bs = symplectic_beamsplitter().matrix;
  const Mat4 f1 = bs * symplectic_squeezer(cfg.r1).matrix;
  const Mat4 f2 = symplectic_squeezer(cfg.r2).matrix * bs;
  const Mat4 f = f2 * symplectic_phase(cfg.phi).matrix * f1;
  const Mat4 du = phase_matrix(-0.5 * std::sin(0.5 * cfg.phi),
                               0.5 * std::cos(0.5 * cfg.phi));
  const Mat4 df = f2 * du * f1;
  const GaussianState in = GaussianState::coherent(cfg.alpha);
  const Mat4 dcov = df * in.cov * f.transpose() + f * in.cov * df.transpose();
  const Vec4 dmean = df * in.mean;
  // <n_k> = tr(cov_kk)/4 + |m_k|^2/2 - 1/2
  const double dna = (dcov(0, 0) + dcov(1, 1)) / 4.0 +
                     s.mean.head<2>().dot(dmean.head<2>());
  const double dnb = (dcov(2, 2) + dcov(3, 3)) / 4.0 +
                     s.mean.tail<2>().dot(dmean.tail<2>());
  out.dn_minus_dphi = dna - dnb;
  return out;
}

}  // namespace dsmzi::gaussian
