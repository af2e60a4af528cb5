#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dsmzi {

enum class ErrorCode {
  kInvalidParameter = 1,
  kNumericalDegeneracy = 2,
  kTruncation = 3,
  kOverflow = 4,
  kAllDiverged = 5,
  kInsufficientData = 6,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Squeezing parameters above this are refused: cosh/sinh of 4r overflow long
// before, and precision is already gone in the moment formulas.
inline constexpr double kMaxSqueezing = 20.0;

// Physical parameters of one interferometer configuration.
//   alpha  coherent amplitude on input mode a (real, >= 0)
//   r1     input squeezer on mode b
//   r2     output squeezer on mode b, before detection
//   phi    phase difference between the arms (radians, not reduced mod 2pi)
//   eta    detection efficiency, identical on both detectors
struct InterferometerConfig {
  double alpha = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double phi = 0.0;
  double eta = 1.0;

  static InterferometerConfig balanced(double alpha, double r, double phi,
                                       double eta = 1.0) {
    return {alpha, r, r, phi, eta};
  }
  // Conventional coherent + squeezed-vacuum scheme (no output squeezer).
  static InterferometerConfig caves(double alpha, double r, double phi,
                                    double eta = 1.0) {
    return {alpha, r, 0.0, phi, eta};
  }

  bool is_balanced() const { return r1 == r2; }

  // Throws Error(kInvalidParameter) or Error(kOverflow).
  void validate() const;
};

enum class MomentPath { kClosedForm, kGaussian, kFock };

std::string_view to_string(MomentPath path);

// First and second moments of the detected photon-number difference N- and
// the mean of the total photon number N+.
struct MomentSet {
  double n_minus_mean = 0.0;
  double n_plus_mean = 0.0;
  double n_minus_var = 0.0;
  std::optional<double> dn_minus_dphi;
  MomentPath path = MomentPath::kClosedForm;

  // n_minus_var >= -tol and |<N->| <= <N+> + tol.
  bool is_physical(double tol = 1e-9) const;
};

// Argument checks shared by the free functions.
void require_finite(double value, std::string_view name);
void require_squeezing(double r, std::string_view name);
void require_amplitude(double alpha);
void require_efficiency(double eta);

}  // namespace dsmzi
