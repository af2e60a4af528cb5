#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dsmzi/types.hpp"

// Self-check suite behind `dsmzi validate`: cross-path agreement, the
// symplectic and loss identities, and the reference values.
namespace dsmzi::validate {

enum class Level { kQuick, kFull };

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Report {
  std::vector<Check> checks;
  bool all_passed() const;
};

// Source of closed-form moments; replaceable so tests can inject a faulty
// implementation and confirm the suite blames it.
using MomentProvider = std::function<MomentSet(const InterferometerConfig&)>;

struct Options {
  Level level = Level::kQuick;
  MomentProvider closed_form;  // empty: closed_form::moments
  int threads = 1;
};

Report run(const Options& opts);

}  // namespace dsmzi::validate
