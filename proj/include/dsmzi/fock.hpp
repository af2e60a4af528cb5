#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "dsmzi/types.hpp"

// Brute-force two-mode Fock-space oracle. Amplitudes are indexed
// (n_a, n_b); operators are exponentials of truncated generators, so each
// is exactly unitary on the truncated space and leakage is tracked through
// the population that reaches the guard band above the physical cutoff.
namespace dsmzi::fock {

// Largest per-mode working dimension (cutoff + guard + 1) accepted.
inline constexpr int kMaxWorkingDim = 160;

struct FockOptions {
  int cutoff = 50;     // physical cutoff per mode
  int guard = 50;      // extra levels above the cutoff
  double tol = 1e-6;   // largest tolerated trunc_error

  int working_dim() const { return cutoff + guard + 1; }
  void validate() const;
};

struct FockState {
  Eigen::MatrixXcd amplitudes;  // rows n_a, cols n_b
  double trunc_error = 0.0;
  int cutoff_a = 0;  // physical cutoff of each axis
  int cutoff_b = 0;

  static FockState vacuum(int dim_a, int dim_b);
  double norm_squared() const { return amplitudes.squaredNorm(); }
  // Population with n_a > cutoff_a or n_b > cutoff_b.
  double guard_population() const;
};

enum class FockMode { kA, kB };

// Squeezer sign: kConsistent is exp[+r(b'^2 - b^2)/2] (b -> b cosh r +
// b' sinh r), kLiteral is exp[-r(b'^2 - b^2)/2].
enum class SqueezeSign { kConsistent, kLiteral };

struct FockOperator {
  enum class Kind { kSingleMode, kNumberBlocks, kDiagonal };

  struct Block {
    int total = 0;   // n_a + n_b
    int na_lo = 0;   // first n_a in the block
    Eigen::MatrixXd u;
  };

  std::string label;
  Kind kind = Kind::kDiagonal;
  FockMode mode = FockMode::kA;  // kSingleMode only
  Eigen::MatrixXd single;        // kSingleMode: out_dim x in_dim
  std::vector<Block> blocks;     // kNumberBlocks
  Eigen::MatrixXcd diagonal;     // kDiagonal: factor per (n_a, n_b)
  int dim_a = 0;
  int dim_b = 0;

  FockState apply(const FockState& s) const;
  // max |U'U - I| restricted to the first `interior` levels (per mode).
  double unitarity_defect(int interior) const;
};

// |alpha> on mode a, vacuum on mode b, levels 0..cutoff on both modes.
// Renormalised; trunc_error is the Poisson tail. Throws kTruncation if that
// tail exceeds 1e-8.
FockState coherent_state(double alpha, int cutoff);

// Single-mode squeezer on `mode` in a space of `dim` levels. With out_dim >
// dim the exponential is built in the larger space and its first `dim`
// columns are kept, so the image is not clipped.
FockOperator squeeze_operator(double r, FockMode mode, int dim, int out_dim = 0,
                              SqueezeSign sign = SqueezeSign::kConsistent);
// exp[pi/4 (a'b - a b')]: a -> (a + b)/sqrt2, b -> (b - a)/sqrt2.
FockOperator beamsplitter_operator(int dim_a, int dim_b);
// exp[i phi (n_a - n_b)/2]
FockOperator phase_operator(double phi, int dim_a, int dim_b);

// S2 B U B S1 |alpha, 0>. Mode b ends in an enlarged space of twice the
// working dimension. Throws kTruncation if trunc_error > opts.tol.
FockState simulate_ds_mzi(const InterferometerConfig& cfg,
                          const FockOptions& opts = {});

// Exact sums over P(n_a, n_b) = |amplitude|^2. No derivative.
MomentSet photon_statistics(const FockState& s);
// Independent binomial thinning of both modes with efficiency eta, then
// the same sums over the smeared distribution.
MomentSet lossy_statistics(const FockState& s, double eta);

// 4 Var(J_z) on B S1 |alpha, 0>.
double qfi(double alpha, double r1, const FockOptions& opts = {},
           SqueezeSign sign = SqueezeSign::kConsistent);

}  // namespace dsmzi::fock
