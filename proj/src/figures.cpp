#include "dsmzi/figures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dsmzi::figures {
namespace {

using optimize::CurvePoint;
using optimize::SweepSpec;
using optimize::SweepVariable;

const double kAlpha = std::sqrt(10.0);
constexpr double kFig4R1 = 1.87;
constexpr double kEtas[] = {1.0, 0.9, 0.8};
const char* const kEtaTags[] = {"eta1.0", "eta0.9", "eta0.8"};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] =
        i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  return xs;
}

// 0..3 in steps of 0.01 plus the equal-intensity point asinh(alpha).
std::vector<double> r_grid() {
  std::vector<double> xs = linspace(0.0, 3.0, 301);
  xs.push_back(std::asinh(kAlpha));
  std::sort(xs.begin(), xs.end());
  return xs;
}

double scaled(const CurvePoint& p) {
  return p.report.diverged ? std::numeric_limits<double>::infinity()
                           : p.report.scaled;
}

double scaled_bound(double alpha, double r1) {
  return std::sqrt(sensitivity::n_bar(alpha, r1)) * sensitivity::qcrb_bound(alpha, r1);
}

SweepSpec spec_for(SweepVariable v, InterferometerConfig fixed, int threads) {
  SweepSpec s;
  s.variable = v;
  s.fixed = fixed;
  s.threads = threads;
  return s;
}

void count_diverged(Table& t) {
  t.diverged = 0;
  for (const auto& row : t.rows)
    for (double v : row)
      if (std::isinf(v)) ++t.diverged;
}

Table fig2(int threads) {
  const auto xs = r_grid();
  SweepSpec caves = spec_for(SweepVariable::kR, {kAlpha, 0, 0, std::numbers::pi / 2, 1}, threads);
  SweepSpec ds = spec_for(SweepVariable::kR, {kAlpha, 0, 0, 1.0, 1}, threads);
  ds.r2_follows_r1 = true;
  ds.optimize_phi = true;
  const auto c = optimize::sweep_at(caves, xs);
  const auto d = optimize::sweep_at(ds, xs);
  Table t{"fig2", {"r", "scaled_caves", "scaled_ds", "scaled_bound", "phi_opt_ds"}, {}, 0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    t.rows.push_back({xs[i], scaled(c[i]), scaled(d[i]), scaled_bound(kAlpha, xs[i]),
                      d[i].phi_opt.value_or(std::numeric_limits<double>::infinity())});
  }
  return t;
}

Table fig3(int threads) {
  const auto xs = r_grid();
  Table t{"fig3", {"r"}, {}, 0};
  std::vector<std::vector<CurvePoint>> curves;
  for (int k = 0; k < 3; ++k) {
    SweepSpec caves = spec_for(SweepVariable::kR,
                               {kAlpha, 0, 0, std::numbers::pi / 2, kEtas[k]}, threads);
    curves.push_back(optimize::sweep_at(caves, xs));
    t.columns.push_back(std::string("scaled_caves_") + kEtaTags[k]);
  }
  for (int k = 0; k < 3; ++k) {
    SweepSpec ds = spec_for(SweepVariable::kR, {kAlpha, 0, 0, 1.0, kEtas[k]}, threads);
    ds.r2_follows_r1 = true;
    ds.optimize_phi = true;
    curves.push_back(optimize::sweep_at(ds, xs));
    t.columns.push_back(std::string("scaled_ds_") + kEtaTags[k]);
  }
  t.columns.push_back("scaled_bound");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    for (const auto& c : curves) row.push_back(scaled(c[i]));
    row.push_back(scaled_bound(kAlpha, xs[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table fig4a(int threads) {
  const auto xs = linspace(0.0, 6.0, 301);
  Table t{"fig4a", {"r2"}, {}, 0};
  std::vector<std::vector<CurvePoint>> curves;
  for (int k = 0; k < 3; ++k) {
    SweepSpec s = spec_for(SweepVariable::kR2, {kAlpha, kFig4R1, 0, 1.0, kEtas[k]}, threads);
    s.optimize_phi = true;
    curves.push_back(optimize::sweep_at(s, xs));
    t.columns.push_back(std::string("scaled_") + kEtaTags[k]);
  }
  for (int k = 0; k < 3; ++k) t.columns.push_back(std::string("phi_opt_") + kEtaTags[k]);
  t.columns.push_back("scaled_bound");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    for (const auto& c : curves) row.push_back(scaled(c[i]));
    for (const auto& c : curves)
      row.push_back(c[i].phi_opt.value_or(std::numeric_limits<double>::infinity()));
    row.push_back(scaled_bound(kAlpha, kFig4R1));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::vector<CurvePoint>> joint_curves(const std::vector<double>& xs,
                                                  int threads) {
  std::vector<std::vector<CurvePoint>> curves;
  for (double eta : kEtas) {
    SweepSpec s = spec_for(SweepVariable::kR, {kAlpha, 0, 0, 1.0, eta}, threads);
    s.optimize_r2 = true;
    curves.push_back(optimize::sweep_at(s, xs));
  }
  return curves;
}

Table fig4b(int threads) {
  const auto xs = linspace(0.0, 2.5, 51);
  const auto curves = joint_curves(xs, threads);
  Table t{"fig4b", {"r1"}, {}, 0};
  for (const char* tag : kEtaTags) t.columns.push_back(std::string("r2_opt_") + tag);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    for (const auto& c : curves)
      row.push_back(c[i].r2_opt.value_or(std::numeric_limits<double>::infinity()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table fig4c(int threads) {
  const auto xs = linspace(0.0, 2.5, 51);
  const auto curves = joint_curves(xs, threads);
  SweepSpec bal = spec_for(SweepVariable::kR, {kAlpha, 0, 0, 1.0, 1.0}, threads);
  bal.r2_follows_r1 = true;
  bal.optimize_phi = true;
  const auto balanced = optimize::sweep_at(bal, xs);
  Table t{"fig4c", {"r1"}, {}, 0};
  for (const char* tag : kEtaTags) t.columns.push_back(std::string("phi_opt_") + tag);
  t.columns.push_back("phi_opt_balanced");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    for (const auto& c : curves)
      row.push_back(c[i].phi_opt.value_or(std::numeric_limits<double>::infinity()));
    row.push_back(balanced[i].phi_opt.value_or(std::numeric_limits<double>::infinity()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4a", "fig4b", "fig4c"};
  return names;
}

Table preset(std::string_view name, int threads) {
  Table t;
  if (name == "fig2") t = fig2(threads);
  else if (name == "fig3") t = fig3(threads);
  else if (name == "fig4a") t = fig4a(threads);
  else if (name == "fig4b") t = fig4b(threads);
  else if (name == "fig4c") t = fig4c(threads);
  else throw Error(ErrorCode::kInvalidParameter, "unknown preset: " + std::string(name));
  count_diverged(t);
  return t;
}

std::string_view variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::kR: return "r";
    case SweepVariable::kR2: return "r2";
    case SweepVariable::kPhi: return "phi";
    case SweepVariable::kAlpha: return "alpha";
  }
  return "x";
}

Table curve_table(const SweepSpec& spec, const std::vector<CurvePoint>& curve) {
  Table t{"sweep",
          {std::string(variable_name(spec.variable)), "alpha", "r1", "r2", "phi", "eta",
           "delta_phi_detection", "delta_phi_bound", "scaled", "saturability", "diverged"},
          {}, 0};
  for (const CurvePoint& p : curve) {
    const auto& c = p.report.config;
    t.rows.push_back({p.x, c.alpha, c.r1, p.r2_opt.value_or(c.r2), p.phi_opt.value_or(c.phi),
                      c.eta, p.report.delta_phi_detection, p.report.delta_phi_bound,
                      p.report.scaled, p.report.saturability, p.report.diverged ? 1.0 : 0.0});
  }
  count_diverged(t);
  return t;
}

}  // namespace dsmzi::figures
