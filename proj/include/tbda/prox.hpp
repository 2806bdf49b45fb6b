#pragma once

#include <memory>
#include <vector>

#include "tbda/kernels.hpp"
#include "tbda/types.hpp"

namespace tbda {

/// Entrywise soft threshold: sign(z) * max(|z| - threshold, 0). Values with
/// |z| exactly equal to the threshold map to 0 (the sparser minimizer).
Matrix shrink_l1(const Matrix& Z, double threshold);

/// Singular value thresholding: U * shrink(S, threshold) * V^T from a full
/// (thin) SVD. The proximal operator of the nuclear norm.
Matrix svt(const Matrix& X, double threshold);

/// Exact minimizer of 1/2 x'Qx + q'x + <tilt,x> + 1/2 |x - anchor|^2_{rI-Q}
/// over x >= 0, which collapses to a projected gradient step with matrix rI:
///   max(0, anchor - (Q anchor + q + tilt) / r).
/// Requires r > lambda_max(Q) so the proximal metric is positive definite.
Vector prox_quadratic_nonneg(const Matrix& Q, const Vector& q,
                             const Vector& tilt, const Vector& anchor,
                             double r);

/// One side (f or g) of a saddle problem: the function data plus the rule
/// for its Bregman proximal map
///   prox(kernel, anchor, tilt, w) = argmin h(u) + <tilt,u> + w B_kernel(u, anchor)
/// over the function's feasible set. Oracles are immutable and cheap to
/// copy; evaluations are pure.
///
/// Supported (kind, kernel) pairs; anything else throws:
///   Linear            any quadratic kernel (weighted uses a metric solve)
///   LinearNonneg      Euclidean
///   NonnegIndicator   Euclidean
///   L1, Nuclear       Euclidean (matrix variables, stored vectorized)
///   Quadratic         any quadratic kernel (dense solve, unconstrained)
///   QuadraticNonneg   only its own fused cancellation kernel (see below)
///   QuadraticNonnegEuclid  Euclidean (inner projected-gradient solve)
///   Separable         Euclidean, applied block by block
class ProxFn {
 public:
  enum class Kind {
    Linear,
    LinearNonneg,
    NonnegIndicator,
    L1,
    Nuclear,
    Quadratic,
    QuadraticNonneg,
    QuadraticNonnegEuclid,
    Separable,
  };

  /// h(u) = <c, u> on all of R^n.
  static ProxFn linear(Vector c);
  /// h(u) = <c, u> + indicator(u >= 0).
  static ProxFn linear_nonneg(Vector c);
  /// h = indicator(u >= 0).
  static ProxFn nonneg(Index dim);
  /// h(U) = lambda |U|_1 over rows x cols matrices (vectorized column-major).
  static ProxFn l1(double lambda, Index rows, Index cols);
  /// h(U) = |U|_* (nuclear norm) over rows x cols matrices.
  static ProxFn nuclear(Index rows, Index cols);
  /// h(u) = 1/2 u'Qu + q'u on all of R^n (prox by dense solve).
  static ProxFn quadratic(Matrix Q, Vector q);
  /// h(u) = 1/2 u'Qu + q'u + indicator(u >= 0) with the metric-cancellation
  /// kernel psi = 1/2 |.|^2_{(rI-Q)/mu}, r = mu lambda_max(Q) + 3, so that
  /// mu B_psi(u, anchor) has Hessian rI - Q and the subproblem collapses to
  /// a closed-form projected step. The kernel is built here and exposed via
  /// paired_kernel(); prox() accepts only that kernel at weight mu.
  static ProxFn quadratic_nonneg(Matrix Q, Vector q, double mu);
  /// Same function under the plain Euclidean kernel; the subproblem has no
  /// closed form and is solved by projected gradient to ~1e-13 fixed-point
  /// accuracy (deterministic, warm-started from the anchor).
  static ProxFn quadratic_nonneg_euclid(Matrix Q, Vector q);
  /// h(u) = sum_i h_i(u_i) over stacked blocks.
  static ProxFn separable(std::vector<ProxFn> parts);

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }

  Vector prox(const Kernel& kernel, const Vector& anchor, const Vector& tilt,
              double weight) const;

  /// h(u) without the indicator part; combine with feasible() for gaps.
  double value(const Vector& u) const;
  bool feasible(const Vector& u, double tol = 0.0) const;

  /// QuadraticNonneg only: the fused kernel, the r constant, and the mu the
  /// oracle was built for.
  const Kernel& paired_kernel() const;
  double cancel_r() const;
  double cancel_mu() const;

 private:
  struct Data;
  ProxFn() = default;
  Kind kind_ = Kind::Linear;
  Index dim_ = 0;
  std::shared_ptr<const Data> data_;
};

}  // namespace tbda
