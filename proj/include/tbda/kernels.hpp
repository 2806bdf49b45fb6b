#pragma once

#include <memory>

#include "tbda/types.hpp"

namespace tbda {

/// Quadratic Bregman kernel: either the Euclidean phi(x) = 1/2 |x|^2 or a
/// weighted form 1/2 |x|_G^2 with G symmetric positive definite. These are
/// the only kernels any scheme in this library needs; entropy-type kernels
/// are out of scope.
///
/// Kernels are immutable after construction and cheap to copy (the metric
/// payload is shared). All operations are pure.
class Kernel {
 public:
  enum class Kind { Euclidean, WeightedQuadratic };

  /// Euclidean kernel; valid for any dimension.
  Kernel() = default;
  static Kernel euclidean() { return Kernel(); }

  /// Weighted quadratic kernel 1/2 |.|_G^2. G must be exactly symmetric and
  /// positive definite: the smallest eigenvalue is estimated by inverse
  /// power iteration on the Cholesky factorization and must exceed
  /// 1e-10 * |G|. Throws std::invalid_argument otherwise.
  static Kernel weighted(Matrix G);

  Kind kind() const { return kind_; }
  bool is_euclidean() const { return kind_ == Kind::Euclidean; }

  /// Metric dimension; -1 for the (dimension-agnostic) Euclidean kernel.
  Index dim() const;

  /// phi(x).
  double value(const Vector& x) const;

  /// grad phi: x for Euclidean, G x for weighted.
  Vector grad(const Vector& x) const;

  /// Bregman distance B_phi(x, y) = phi(x) - phi(y) - <grad phi(y), x - y>.
  /// For these kernels this equals 1/2 |x - y|_G^2 up to rounding.
  double distance(const Vector& x, const Vector& y) const;

  /// G v (identity for Euclidean).
  Vector apply_metric(const Vector& v) const;

  /// G^{-1} v via the cached Cholesky factorization.
  Vector solve_metric(const Vector& v) const;

  const Matrix& metric() const;

  double metric_norm() const;     // |G| (power-iteration estimate; 1 for Euclidean)
  double metric_min_eig() const;  // smallest eigenvalue estimate; 1 for Euclidean

  /// True when both kernels share the identical metric payload. Used to
  /// verify that a fused prox oracle is paired with the kernel it was built
  /// for without comparing matrices entry-wise.
  bool shares_metric_with(const Kernel& other) const {
    return weighted_.get() == other.weighted_.get();
  }

 private:
  struct Weighted;
  void check_dim_(const Vector& x) const;
  Kind kind_ = Kind::Euclidean;
  std::shared_ptr<const Weighted> weighted_;
};

/// Residual of the three-point identity (Proposition 2.4(ii) form):
///   | B(x,a) - B(x,b) - B(b,a) - <grad phi(b) - grad phi(a), x - b> |.
/// Exact (up to rounding) for quadratic kernels.
double three_point_check(const Kernel& kernel, const Vector& x,
                         const Vector& a, const Vector& b);

}  // namespace tbda
