#include "dsmzi/fock.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

namespace dsmzi::fock {
namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

constexpr double kCoherentTailTol = 1e-8;

MatrixXd squeeze_generator(double r, int dim, SqueezeSign sign) {
  // r (b'^2 - b^2)/2 with b'^2 |n> = sqrt((n+1)(n+2)) |n+2>
  MatrixXd g = MatrixXd::Zero(dim, dim);
  const double s = sign == SqueezeSign::kConsistent ? 0.5 * r : -0.5 * r;
  for (int n = 0; n + 2 < dim; ++n) {
    const double c = std::sqrt(static_cast<double>(n + 1) * (n + 2));
    g(n + 2, n) += s * c;
    g(n, n + 2) -= s * c;
  }
  return g;
}

// Binomial thinning matrix, t(n, m) = C(n, m) eta^m (1 - eta)^(n - m).
MatrixXd thinning(int dim, double eta) {
  MatrixXd t = MatrixXd::Zero(dim, dim);
  t(0, 0) = 1.0;
  for (int n = 1; n < dim; ++n) {
    for (int m = 0; m <= n; ++m) {
      const double keep = m > 0 ? eta * t(n - 1, m - 1) : 0.0;
      t(n, m) = (1.0 - eta) * t(n - 1, m) + keep;
    }
  }
  return t;
}

MomentSet moments_of(const MatrixXd& p) {
  double total = 0.0, m1 = 0.0, m2 = 0.0, np = 0.0;
  for (int b = 0; b < p.cols(); ++b) {
    for (int a = 0; a < p.rows(); ++a) {
      const double w = p(a, b);
      if (w == 0.0) continue;
      const double d = a - b;
      total += w;
      m1 += w * d;
      m2 += w * d * d;
      np += w * (a + b);
    }
  }
  MomentSet out;
  out.path = MomentPath::kFock;
  out.n_minus_mean = m1 / total;
  out.n_plus_mean = np / total;
  out.n_minus_var = m2 / total - out.n_minus_mean * out.n_minus_mean;
  return out;
}

}  // namespace

void FockOptions::validate() const {
  if (cutoff < 1 || guard < 0) {
    throw Error(ErrorCode::kInvalidParameter, "cutoff must be >= 1, guard >= 0");
  }
  if (working_dim() > kMaxWorkingDim) {
    throw Error(ErrorCode::kInvalidParameter,
                "cutoff + guard exceeds the oracle size limit");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "tol must be positive");
  }
}

FockState FockState::vacuum(int dim_a, int dim_b) {
  FockState s;
  s.amplitudes = MatrixXcd::Zero(dim_a, dim_b);
  s.amplitudes(0, 0) = 1.0;
  s.cutoff_a = dim_a - 1;
  s.cutoff_b = dim_b - 1;
  return s;
}

double FockState::guard_population() const {
  double pop = 0.0;
  for (int b = 0; b < amplitudes.cols(); ++b) {
    for (int a = 0; a < amplitudes.rows(); ++a) {
      if (a > cutoff_a || b > cutoff_b) pop += std::norm(amplitudes(a, b));
    }
  }
  return pop;
}

FockState coherent_state(double alpha, int cutoff) {
  require_amplitude(alpha);
  if (cutoff < 1) {
    throw Error(ErrorCode::kInvalidParameter, "cutoff must be >= 1");
  }
  const int dim = cutoff + 1;
  FockState s = FockState::vacuum(dim, dim);
  double amp = std::exp(-0.5 * alpha * alpha);
  double norm = 0.0;
  for (int n = 0; n < dim; ++n) {
    if (n > 0) amp *= alpha / std::sqrt(static_cast<double>(n));
    s.amplitudes(n, 0) = amp;
    norm += amp * amp;
  }
  s.trunc_error = std::max(0.0, 1.0 - norm);
  if (s.trunc_error > kCoherentTailTol) {
    throw Error(ErrorCode::kTruncation,
                "cutoff too small for the coherent amplitude");
  }
  s.amplitudes /= std::sqrt(norm);
  return s;
}

FockState FockOperator::apply(const FockState& s) const {
  const bool fits =
      kind == Kind::kSingleMode
          ? (mode == FockMode::kA ? s.amplitudes.rows() : s.amplitudes.cols()) == single.cols()
          : s.amplitudes.rows() == dim_a && s.amplitudes.cols() == dim_b;
  if (!fits) {
    throw Error(ErrorCode::kInvalidParameter,
                label + ": state dimensions do not match the operator");
  }
  FockState out = s;
  switch (kind) {
    case Kind::kSingleMode:
      if (mode == FockMode::kB) {
        out.amplitudes = s.amplitudes * single.transpose().cast<std::complex<double>>();
        out.cutoff_b = s.cutoff_b + static_cast<int>(single.rows() - single.cols());
      } else {
        out.amplitudes = single.cast<std::complex<double>>() * s.amplitudes;
        out.cutoff_a = s.cutoff_a + static_cast<int>(single.rows() - single.cols());
      }
      break;
    case Kind::kNumberBlocks:
      for (const Block& blk : blocks) {
        const int k = static_cast<int>(blk.u.rows());
        Eigen::VectorXcd v(k);
        for (int i = 0; i < k; ++i) {
          const int na = blk.na_lo + i;
          v(i) = s.amplitudes(na, blk.total - na);
        }
        const Eigen::VectorXcd w = blk.u.cast<std::complex<double>>() * v;
        for (int i = 0; i < k; ++i) {
          const int na = blk.na_lo + i;
          out.amplitudes(na, blk.total - na) = w(i);
        }
      }
      break;
    case Kind::kDiagonal:
      out.amplitudes = s.amplitudes.cwiseProduct(diagonal);
      break;
  }
  return out;
}

double FockOperator::unitarity_defect(int interior) const {
  switch (kind) {
    case Kind::kSingleMode: {
      const int n = std::min<int>(interior, static_cast<int>(single.cols()));
      const MatrixXd gram = single.transpose() * single;
      return (gram.topLeftCorner(n, n) - MatrixXd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
    }
    case Kind::kNumberBlocks: {
      double worst = 0.0;
      for (const Block& blk : blocks) {
        if (blk.total > interior) continue;
        const int k = static_cast<int>(blk.u.rows());
        worst = std::max(worst, (blk.u.transpose() * blk.u - MatrixXd::Identity(k, k))
                                    .cwiseAbs()
                                    .maxCoeff());
      }
      return worst;
    }
    case Kind::kDiagonal: {
      double worst = 0.0;
      for (int b = 0; b < std::min(interior, dim_b); ++b)
        for (int a = 0; a < std::min(interior, dim_a); ++a)
          worst = std::max(worst, std::abs(std::norm(diagonal(a, b)) - 1.0));
      return worst;
    }
  }
  return 0.0;
}

FockOperator squeeze_operator(double r, FockMode mode, int dim, int out_dim,
                              SqueezeSign sign) {
  require_squeezing(r, "r");
  if (dim < 1 || dim > 2 * kMaxWorkingDim) {
    throw Error(ErrorCode::kInvalidParameter, "squeezer dimension out of range");
  }
  if (out_dim < dim) out_dim = dim;
  FockOperator op;
  op.label = "squeeze";
  op.kind = FockOperator::Kind::kSingleMode;
  op.mode = mode;
  const MatrixXd full = squeeze_generator(r, out_dim, sign).exp();
  op.single = full.leftCols(dim);
  op.dim_a = mode == FockMode::kA ? dim : 0;
  op.dim_b = mode == FockMode::kB ? dim : 0;
  return op;
}

FockOperator beamsplitter_operator(int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1) {
    throw Error(ErrorCode::kInvalidParameter, "dimensions must be >= 1");
  }
  FockOperator op;
  op.label = "beamsplitter";
  op.kind = FockOperator::Kind::kNumberBlocks;
  op.dim_a = dim_a;
  op.dim_b = dim_b;
  const double angle = std::numbers::pi / 4.0;
  for (int total = 0; total <= dim_a + dim_b - 2; ++total) {
    const int lo = std::max(0, total - dim_b + 1);
    const int hi = std::min(total, dim_a - 1);
    const int k = hi - lo + 1;
    // a'b moves (na, nb) -> (na + 1, nb - 1) with weight sqrt((na+1) nb).
    MatrixXd g = MatrixXd::Zero(k, k);
    for (int i = 0; i + 1 < k; ++i) {
      const int na = lo + i;
      const double c = std::sqrt(static_cast<double>(na + 1) * (total - na));
      g(i + 1, i) += c;
      g(i, i + 1) -= c;
    }
    op.blocks.push_back({total, lo, (angle * g).exp()});
  }
  return op;
}

FockOperator phase_operator(double phi, int dim_a, int dim_b) {
  require_finite(phi, "phi");
  FockOperator op;
  op.label = "phase";
  op.kind = FockOperator::Kind::kDiagonal;
  op.dim_a = dim_a;
  op.dim_b = dim_b;
  op.diagonal.resize(dim_a, dim_b);
  for (int b = 0; b < dim_b; ++b)
    for (int a = 0; a < dim_a; ++a)
      op.diagonal(a, b) = std::polar(1.0, 0.5 * phi * (a - b));
  return op;
}

namespace {

// B S1 |alpha, 0> in the working space; trunc_error tracks the worst guard
// population seen so far.
FockState first_half(double alpha, double r1, const FockOptions& opts,
                     SqueezeSign sign, const FockOperator& bs) {
  const int dim = opts.working_dim();
  FockState s = coherent_state(alpha, dim - 1);
  const double tail = s.trunc_error;
  s.cutoff_a = s.cutoff_b = opts.cutoff;
  double worst = 0.0;
  auto track = [&](FockState st) {
    worst = std::max(worst, st.guard_population());
    return st;
  };
  s = track(squeeze_operator(r1, FockMode::kB, dim, 0, sign).apply(s));
  s = track(bs.apply(s));
  s.trunc_error = worst + tail;
  return s;
}

}  // namespace

namespace {

// The beam splitter depends only on the dimensions and dominates the cost
// of a run, so built operators are shared.
const FockOperator& cached_beamsplitter(int dim_a, int dim_b) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<const FockOperator>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{dim_a, dim_b}];
  if (!slot) slot = std::make_unique<const FockOperator>(beamsplitter_operator(dim_a, dim_b));
  return *slot;
}

}  // namespace

FockState simulate_ds_mzi(const InterferometerConfig& cfg,
                          const FockOptions& opts) {
  cfg.validate();
  opts.validate();
  const int dim = opts.working_dim();
  const FockOperator& bs = cached_beamsplitter(dim, dim);
  FockState s = first_half(cfg.alpha, cfg.r1, opts, SqueezeSign::kConsistent, bs);
  const double before = s.trunc_error;
  s = phase_operator(cfg.phi, dim, dim).apply(s);
  s = bs.apply(s);
  const double middle = s.guard_population();
  const int out_dim = 2 * dim;
  s = squeeze_operator(cfg.r2, FockMode::kB, dim, out_dim).apply(s);
  s.cutoff_b = out_dim - 1 - opts.guard;
  s.trunc_error = std::max({before, middle, s.guard_population()});
  if (s.trunc_error > opts.tol) {
    throw Error(ErrorCode::kTruncation,
                "guard-band population exceeds tolerance; raise the cutoff");
  }
  return s;
}

MomentSet photon_statistics(const FockState& s) {
  return moments_of(s.amplitudes.cwiseAbs2());
}

MomentSet lossy_statistics(const FockState& s, double eta) {
  require_efficiency(eta);
  const MatrixXd p = s.amplitudes.cwiseAbs2();
  if (eta == 1.0) return moments_of(p);
  const MatrixXd ta = thinning(static_cast<int>(p.rows()), eta);
  const MatrixXd tb = thinning(static_cast<int>(p.cols()), eta);
  return moments_of(ta.transpose() * p * tb);
}

double qfi(double alpha, double r1, const FockOptions& opts, SqueezeSign sign) {
  require_amplitude(alpha);
  require_squeezing(r1, "r1");
  opts.validate();
  const int dim = opts.working_dim();
  const FockState s =
      first_half(alpha, r1, opts, sign, cached_beamsplitter(dim, dim));
  if (s.trunc_error > opts.tol) {
    throw Error(ErrorCode::kTruncation,
                "guard-band population exceeds tolerance; raise the cutoff");
  }
  // J_z = N-/2, so 4 Var(J_z) = Var(N-).
  return photon_statistics(s).n_minus_var;
}

}  // namespace dsmzi::fock
