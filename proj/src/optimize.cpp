#include "dsmzi/optimize.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace dsmzi::optimize {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double objective(double dphi) { return std::isfinite(dphi) ? dphi : kInf; }

// Golden-section minimum of f on [a, b]; returns the abscissa.
double golden(const std::function<double(double)>& f, double a, double b,
              double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

double grid_value(double lo, double hi, int points, int i) {
  if (i == points - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / (points - 1);
}

}  // namespace

PhaseOptimum optimal_phase(double alpha, double r1, double r2, double eta,
                           const PhaseSearch& search) {
  InterferometerConfig cfg{alpha, r1, r2, 0.5 * (search.lo + search.hi), eta};
  cfg.validate();
  if (!(search.lo < search.hi) || search.points < 3) {
    throw Error(ErrorCode::kInvalidParameter, "bad phase search interval");
  }
  auto eval = [&](double phi) {
    InterferometerConfig c = cfg;
    c.phi = phi;
    return sensitivity::phase_sensitivity_noisy(c);
  };
  int best = -1;
  double best_val = kInf;
  for (int i = 0; i < search.points; ++i) {
    const double v = objective(
        eval(grid_value(search.lo, search.hi, search.points, i)).delta_phi_detection);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best < 0) {
    throw Error(ErrorCode::kAllDiverged, "every phase on the scan diverges");
  }
  const double a = grid_value(search.lo, search.hi, search.points, std::max(best - 1, 0));
  const double b = grid_value(search.lo, search.hi, search.points,
                              std::min(best + 1, search.points - 1));
  const double refined = golden(
      [&](double phi) { return objective(eval(phi).delta_phi_detection); }, a, b,
      search.tol);
  PhaseOptimum out;
  out.report = eval(refined);
  out.phi_opt = refined;
  if (!(objective(out.report.delta_phi_detection) <= best_val)) {
    out.phi_opt = grid_value(search.lo, search.hi, search.points, best);
    out.report = eval(out.phi_opt);
  }
  return out;
}

double asymptotic_phase_opt(double r) {
  require_finite(r, "r");
  return 2.0 * std::atan(std::pow(std::exp(2.0 * r) + std::exp(4.0 * r), 0.25));
}

R2Optimum optimal_r2(double alpha, double r1, double eta, const R2Search& search) {
  InterferometerConfig{alpha, r1, r1, 1.0, eta}.validate();
  const double hi = std::min(r1 + search.span, kMaxSqueezing);
  auto value = [&](double r2) {
    try {
      return objective(optimal_phase(alpha, r1, r2, eta).report.delta_phi_detection);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kAllDiverged) return kInf;
      throw;
    }
  };
  auto scan = [&](double lo, double top, double step) {
    const int n = static_cast<int>(std::floor((top - lo) / step + 1e-9)) + 1;
    double best_r2 = lo;
    double best_val = kInf;
    for (int i = 0; i < n; ++i) {
      const double r2 = std::min(lo + step * i, top);
      const double v = value(r2);
      if (v < best_val) {
        best_val = v;
        best_r2 = r2;
      }
    }
    return std::pair{best_r2, best_val};
  };
  auto [coarse, coarse_val] = scan(0.0, hi, search.coarse_step);
  if (!std::isfinite(coarse_val)) {
    throw Error(ErrorCode::kAllDiverged, "every r2 on the scan diverges");
  }
  const double lo_f = std::max(0.0, coarse - search.coarse_step);
  const double hi_f = std::min(hi, coarse + search.coarse_step);
  auto [fine, fine_val] = scan(lo_f, hi_f, search.fine_step);
  double r2 = fine;
  if (search.tol > 0.0) {
    const double g = golden(value, std::max(0.0, fine - search.fine_step),
                            std::min(hi, fine + search.fine_step), search.tol);
    if (value(g) <= fine_val) r2 = g;
  }
  const PhaseOptimum p = optimal_phase(alpha, r1, r2, eta);
  return {r2, p.phi_opt, p.report};
}

double alpha_split_residual(const AlphaSplit& s) {
  const double e2r = std::exp(2.0 * s.r);
  return s.alpha * s.alpha - (e2r - 1.0) * std::sinh(2.0 * s.r) / (2.0 * e2r);
}

AlphaSplit optimal_alpha_split(double n_bar) {
  if (!std::isfinite(n_bar) || n_bar <= 0.0) {
    throw Error(ErrorCode::kInvalidParameter, "n_bar must be positive");
  }
  // f(r) = cond(r) + sinh^2 r - n_bar is increasing, negative at 0 and
  // non-negative where sinh^2 r = n_bar.
  auto f = [&](double r) {
    const double e2r = std::exp(2.0 * r);
    return (e2r - 1.0) * std::sinh(2.0 * r) / (2.0 * e2r) +
           std::pow(std::sinh(r), 2) - n_bar;
  };
  double lo = 0.0;
  double hi = std::asinh(std::sqrt(n_bar));
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double r = std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
  return {std::sqrt(std::max(0.0, n_bar - std::pow(std::sinh(r), 2))), r};
}

Plateau plateau_sensitivity(double r1) {
  require_squeezing(r1, "r1");
  return {5.0 * std::sqrt(19.0 + std::cosh(2.0 * r1)) /
              (20.0 * std::exp(r1) + std::sinh(r1)),
          2.0 * std::atan(3.0 * std::exp(r1))};
}

void SweepSpec::validate() const {
  fixed.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorCode::kInvalidParameter, "sweep range needs lo < hi");
  }
  if (points < 2) {
    throw Error(ErrorCode::kInvalidParameter, "sweep needs at least 2 points");
  }
  if (optimize_r2 && variable == SweepVariable::kR2) {
    throw Error(ErrorCode::kInvalidParameter,
                "cannot sweep and optimise r2 at once");
  }
  if ((optimize_phi || optimize_r2) && variable == SweepVariable::kPhi) {
    throw Error(ErrorCode::kInvalidParameter,
                "cannot sweep and optimise phi at once");
  }
  if (threads < 1) {
    throw Error(ErrorCode::kInvalidParameter, "threads must be >= 1");
  }
}

namespace {

CurvePoint evaluate_point(const SweepSpec& spec, double x) {
  InterferometerConfig cfg = spec.fixed;
  switch (spec.variable) {
    case SweepVariable::kR:
      cfg.r1 = x;
      if (spec.r2_follows_r1) cfg.r2 = x;
      break;
    case SweepVariable::kR2: cfg.r2 = x; break;
    case SweepVariable::kPhi: cfg.phi = x; break;
    case SweepVariable::kAlpha: cfg.alpha = x; break;
  }
  cfg.validate();
  CurvePoint pt;
  pt.x = x;
  try {
    if (spec.optimize_r2) {
      const R2Optimum o = optimal_r2(cfg.alpha, cfg.r1, cfg.eta);
      pt.report = o.report;
      pt.phi_opt = o.phi_opt;
      pt.r2_opt = o.r2_opt;
    } else if (spec.optimize_phi) {
      const PhaseOptimum o = optimal_phase(cfg.alpha, cfg.r1, cfg.r2, cfg.eta);
      pt.report = o.report;
      pt.phi_opt = o.phi_opt;
    } else {
      pt.report = sensitivity::phase_sensitivity_noisy(cfg);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAllDiverged) throw;
    pt.report = sensitivity::phase_sensitivity_noisy(cfg);
    pt.report.diverged = true;
    pt.report.delta_phi_detection = kInf;
    pt.report.scaled = kInf;
    pt.report.saturability = 0.0;
  }
  return pt;
}

}  // namespace

std::vector<CurvePoint> sweep_at(const SweepSpec& spec,
                                 const std::vector<double>& xs) {
  std::vector<CurvePoint> out(xs.size());
  parallel_for(static_cast<int>(xs.size()), spec.threads, [&](int i) {
    out[static_cast<std::size_t>(i)] = evaluate_point(spec, xs[static_cast<std::size_t>(i)]);
  });
  return out;
}

std::vector<CurvePoint> sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<double> xs(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i) {
    xs[static_cast<std::size_t>(i)] = grid_value(spec.lo, spec.hi, spec.points, i);
  }
  return sweep_at(spec, xs);
}

OffsetFit fit_offset(const std::vector<CurvePoint>& curve, double r1_min) {
  double sum = 0.0;
  std::vector<double> d;
  for (const CurvePoint& p : curve) {
    if (p.x > r1_min && p.r2_opt) d.push_back(*p.r2_opt - p.x);
  }
  if (d.size() < 3) {
    throw Error(ErrorCode::kInsufficientData,
                "offset fit needs at least 3 points with r1 above the threshold");
  }
  for (double v : d) sum += v;
  OffsetFit fit;
  fit.points = static_cast<int>(d.size());
  fit.delta = sum / fit.points;
  double ss = 0.0;
  for (double v : d) ss += (v - fit.delta) * (v - fit.delta);
  fit.residual = std::sqrt(ss / fit.points);
  return fit;
}

}  // namespace dsmzi::optimize
