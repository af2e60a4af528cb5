#pragma once

#include <optional>
#include <vector>

#include "dsmzi/sensitivity.hpp"
#include "dsmzi/types.hpp"

// Working-point and squeezing optimisation plus parameter sweeps. All
// searches are derivative-free: a coarse grid followed by golden-section
// refinement inside the bracketing cell.
namespace dsmzi::optimize {

using sensitivity::SensitivityReport;

struct PhaseSearch {
  double lo = 0.01;
  double hi = 3.141592653589793 - 1e-6;
  int points = 401;
  double tol = 1e-10;
};

struct PhaseOptimum {
  double phi_opt = 0.0;
  SensitivityReport report;
};

// Minimises the detection dphi over phi at fixed (alpha, r1, r2, eta). Ties
// on the coarse grid go to the smaller phi. Throws kAllDiverged if every
// grid point diverges.
PhaseOptimum optimal_phase(double alpha, double r1, double r2, double eta,
                           const PhaseSearch& search = {});

// 2 arctan (e^{2r} + e^{4r})^{1/4}
double asymptotic_phase_opt(double r);

struct R2Search {
  double span = 3.0;         // r2 in [0, r1 + span]
  double coarse_step = 0.05;
  double fine_step = 0.01;
  double tol = 1e-6;         // golden refinement; 0 disables it
};

struct R2Optimum {
  double r2_opt = 0.0;
  double phi_opt = 0.0;
  SensitivityReport report;
};

R2Optimum optimal_r2(double alpha, double r1, double eta,
                     const R2Search& search = {});

struct AlphaSplit {
  double alpha = 0.0;
  double r = 0.0;
};

// Solves alpha^2 + sinh^2 r = n_bar together with the stationarity
// condition alpha^2 = (e^{2r} - 1) sinh(2r) / (2 e^{2r}) by bisection.
AlphaSplit optimal_alpha_split(double n_bar);
// Residual of the stationarity condition for a given split.
double alpha_split_residual(const AlphaSplit& s);

struct Plateau {
  double scaled = 0.0;
  double phi = 0.0;
};

// Large-r2 plateau at alpha = sqrt(10):
//   5 sqrt(19 + cosh 2r1) / (20 e^{r1} + sinh r1) at phi = 2 arctan(3 e^{r1}).
Plateau plateau_sensitivity(double r1);

enum class SweepVariable { kR, kR2, kPhi, kAlpha };

struct SweepSpec {
  SweepVariable variable = SweepVariable::kR;
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;
  InterferometerConfig fixed;
  bool optimize_phi = false;
  bool optimize_r2 = false;
  // With variable kR, also set r2 = x (balanced curve).
  bool r2_follows_r1 = false;
  int threads = 1;

  void validate() const;
};

struct CurvePoint {
  double x = 0.0;
  SensitivityReport report;
  std::optional<double> phi_opt;
  std::optional<double> r2_opt;
};

// Grid values lo + i (hi - lo)/(points - 1); divergent points are flagged,
// not dropped. Points run on up to `threads` workers and are merged by index.
std::vector<CurvePoint> sweep(const SweepSpec& spec);
// The same, over explicit x values.
std::vector<CurvePoint> sweep_at(const SweepSpec& spec,
                                 const std::vector<double>& xs);

struct OffsetFit {
  double delta = 0.0;
  double residual = 0.0;  // rms of r2_opt - r1 - delta
  int points = 0;
};

// Least-squares r2_opt = r1 + delta over the points with r1 > r1_min.
// Throws kInsufficientData with fewer than 3 usable points.
OffsetFit fit_offset(const std::vector<CurvePoint>& curve, double r1_min = 1.0);

// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn);

}  // namespace dsmzi::optimize

#include "dsmzi/detail/parallel.hpp"
