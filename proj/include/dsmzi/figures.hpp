#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dsmzi/optimize.hpp"

// Named sweep presets reproducing the figure data at alpha = sqrt(10).
namespace dsmzi::figures {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // +inf marks a divergent entry
  int diverged = 0;                       // number of +inf entries
};

const std::vector<std::string>& preset_names();

// fig2  r, scaled_caves, scaled_ds, scaled_bound, phi_opt_ds
// fig3  r, scaled_caves_eta{1.0,0.9,0.8}, scaled_ds_eta{...}, scaled_bound
// fig4a r2, scaled_eta{...}, phi_opt_eta{...}, scaled_bound   (r1 = 1.87)
// fig4b r1, r2_opt_eta{1.0,0.9,0.8}
// fig4c r1, phi_opt_eta{1.0,0.9,0.8}, phi_opt_balanced
// Throws kInvalidParameter for an unknown name.
Table preset(std::string_view name, int threads = 1);

// Generic table for an explicit sweep.
Table curve_table(const optimize::SweepSpec& spec,
                  const std::vector<optimize::CurvePoint>& curve);

std::string_view variable_name(optimize::SweepVariable v);

}  // namespace dsmzi::figures
