#pragma once

#include <memory>

#include "tbda/types.hpp"

namespace tbda {

struct SpectralNormEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Coupling operator A of the saddle problem. Three storage kinds cover
/// everything the experiments need:
///   Dense            an explicit m x n matrix,
///   StackedIdentity  A = [I I ... I] with p identical n-dim blocks,
///                    so A(x_1,...,x_p) = sum_i x_i,
///   RowVector        a single row (m = 1).
/// Maps are immutable and cheap to copy.
class LinearMap {
 public:
  static LinearMap dense(Matrix A);
  static LinearMap stacked_identity(int blocks, Index block_dim);
  static LinearMap row_vector(Vector row);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  Vector apply(const Vector& x) const;    // A x
  Vector adjoint(const Vector& y) const;  // A^T y

  /// |A| via power iteration on A^T A, started from the normalized all-ones
  /// vector (fixed start, no randomness, so downstream step sizes are
  /// reproducible). Relative accuracy `tol` on the eigenvalue; if the
  /// iteration does not settle within `max_iter` the best estimate is
  /// returned with converged = false.
  SpectralNormEstimate spectral_norm(double tol = 1e-8,
                                     int max_iter = 5000) const;

 private:
  enum class Kind { Dense, StackedIdentity, RowVector };
  Kind kind_ = Kind::Dense;
  Index rows_ = 0, cols_ = 0;
  int blocks_ = 0;
  std::shared_ptr<const Matrix> dense_;
  std::shared_ptr<const Vector> row_;
};

}  // namespace tbda
