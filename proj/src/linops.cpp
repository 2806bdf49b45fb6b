#include "tbda/linops.hpp"

#include <cmath>
#include <stdexcept>

namespace tbda {

LinearMap LinearMap::dense(Matrix A) {
  LinearMap m;
  m.kind_ = Kind::Dense;
  m.rows_ = A.rows();
  m.cols_ = A.cols();
  m.dense_ = std::make_shared<const Matrix>(std::move(A));
  return m;
}

LinearMap LinearMap::stacked_identity(int blocks, Index block_dim) {
  if (blocks < 1 || block_dim < 1) {
    throw std::invalid_argument("stacked_identity: need blocks >= 1, dim >= 1");
  }
  LinearMap m;
  m.kind_ = Kind::StackedIdentity;
  m.blocks_ = blocks;
  m.rows_ = block_dim;
  m.cols_ = block_dim * blocks;
  return m;
}

LinearMap LinearMap::row_vector(Vector row) {
  LinearMap m;
  m.kind_ = Kind::RowVector;
  m.rows_ = 1;
  m.cols_ = row.size();
  m.row_ = std::make_shared<const Vector>(std::move(row));
  return m;
}

Vector LinearMap::apply(const Vector& x) const {
  if (x.size() != cols_) {
    throw std::invalid_argument("LinearMap::apply: dimension mismatch");
  }
  switch (kind_) {
    case Kind::Dense:
      return *dense_ * x;
    case Kind::StackedIdentity: {
      Vector out = Vector::Zero(rows_);
      for (int b = 0; b < blocks_; ++b) out += x.segment(b * rows_, rows_);
      return out;
    }
    case Kind::RowVector: {
      Vector out(1);
      out[0] = row_->dot(x);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

Vector LinearMap::adjoint(const Vector& y) const {
  if (y.size() != rows_) {
    throw std::invalid_argument("LinearMap::adjoint: dimension mismatch");
  }
  switch (kind_) {
    case Kind::Dense:
      return dense_->transpose() * y;
    case Kind::StackedIdentity: {
      Vector out(cols_);
      for (int b = 0; b < blocks_; ++b) out.segment(b * rows_, rows_) = y;
      return out;
    }
    case Kind::RowVector:
      return *row_ * y[0];
  }
  throw std::logic_error("unreachable");
}

SpectralNormEstimate LinearMap::spectral_norm(double tol, int max_iter) const {
  if (tol <= 0.0) throw std::invalid_argument("spectral_norm: tol must be > 0");
  SpectralNormEstimate est;
  Vector v = Vector::Ones(cols_) / std::sqrt(static_cast<double>(cols_));
  double lam = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Vector w = adjoint(apply(v));  // A^T A v
    double nw = w.norm();
    est.iterations = it;
    if (nw == 0.0) {  // v in the null space and A^T A v = 0: norm is 0
      est.value = 0.0;
      est.converged = true;
      return est;
    }
    double lam_new = v.dot(w);
    v = w / nw;
    if (it > 1 && std::abs(lam_new - lam) <= tol * std::abs(lam_new)) {
      est.value = std::sqrt(lam_new);
      est.converged = true;
      return est;
    }
    lam = lam_new;
  }
  est.value = std::sqrt(std::max(lam, 0.0));
  est.converged = false;
  return est;
}

}  // namespace tbda
