#include "dsmzi/types.hpp"

#include <cmath>

namespace dsmzi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter: return "invalid parameter";
    case ErrorCode::kNumericalDegeneracy: return "numerical degeneracy";
    case ErrorCode::kTruncation: return "truncation";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kAllDiverged: return "all points diverged";
    case ErrorCode::kInsufficientData: return "insufficient data";
  }
  return "unknown";
}

std::string_view to_string(MomentPath path) {
  switch (path) {
    case MomentPath::kClosedForm: return "closed_form";
    case MomentPath::kGaussian: return "gaussian";
    case MomentPath::kFock: return "fock";
  }
  return "unknown";
}

void require_finite(double value, std::string_view name) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidParameter,
                std::string(name) + " must be finite");
  }
}

void require_squeezing(double r, std::string_view name) {
  require_finite(r, name);
  if (r < 0.0) {
    throw Error(ErrorCode::kInvalidParameter,
                std::string(name) + " must be >= 0");
  }
  if (r > kMaxSqueezing) {
    throw Error(ErrorCode::kOverflow,
                std::string(name) + " exceeds the supported squeezing range");
  }
}

void require_amplitude(double alpha) {
  require_finite(alpha, "alpha");
  if (alpha < 0.0) {
    throw Error(ErrorCode::kInvalidParameter, "alpha must be >= 0");
  }
}

void require_efficiency(double eta) {
  if (!std::isfinite(eta) || eta <= 0.0 || eta > 1.0) {
    throw Error(ErrorCode::kInvalidParameter, "eta must lie in (0, 1]");
  }
}

void InterferometerConfig::validate() const {
  require_amplitude(alpha);
  require_squeezing(r1, "r1");
  require_squeezing(r2, "r2");
  require_finite(phi, "phi");
  require_efficiency(eta);
}

bool MomentSet::is_physical(double tol) const {
  return n_minus_var >= -tol && std::abs(n_minus_mean) <= n_plus_mean + tol;
}

}  // namespace dsmzi
