#include "tbda/kernels.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

namespace tbda {

struct Kernel::Weighted {
  Matrix G;
  Eigen::LLT<Matrix> llt;
  double norm = 0.0;     // |G|
  double min_eig = 0.0;  // smallest eigenvalue estimate
};

namespace {

// Largest eigenvalue of an SPD matrix by power iteration from the all-ones
// direction (deterministic).
double spd_top_eigenvalue(const Matrix& G) {
  const Index n = G.rows();
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double lam = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vector w = G * v;
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    double lam_new = v.dot(w);
    w /= nw;
    if (std::abs(lam_new - lam) <= 1e-13 * std::abs(lam_new) && it > 2) {
      return lam_new;
    }
    lam = lam_new;
    v = w;
  }
  return lam;
}

// Smallest eigenvalue via inverse power iteration using the factorization.
double spd_bottom_eigenvalue(const Matrix& G, const Eigen::LLT<Matrix>& llt) {
  const Index n = G.rows();
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double lam = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vector w = llt.solve(v);
    double nw = w.norm();
    if (nw == 0.0) break;
    w /= nw;
    double lam_new = w.dot(G * w);
    if (std::abs(lam_new - lam) <= 1e-13 * std::abs(lam_new) && it > 2) {
      return lam_new;
    }
    lam = lam_new;
    v = w;
  }
  return lam;
}

}  // namespace

Kernel Kernel::weighted(Matrix G) {
  if (G.rows() != G.cols()) {
    throw std::invalid_argument("kernel metric must be square");
  }
  if ((G - G.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("kernel metric must be exactly symmetric");
  }
  auto w = std::make_shared<Weighted>();
  w->G = std::move(G);
  w->llt.compute(w->G);
  w->norm = spd_top_eigenvalue(w->G);
  if (w->llt.info() != Eigen::Success) {
    throw std::invalid_argument("kernel metric is not positive definite");
  }
  w->min_eig = spd_bottom_eigenvalue(w->G, w->llt);
  if (!(w->min_eig > 1e-10 * w->norm)) {
    throw std::invalid_argument("kernel metric is not positive definite");
  }
  Kernel k;
  k.kind_ = Kind::WeightedQuadratic;
  k.weighted_ = std::move(w);
  return k;
}

Index Kernel::dim() const {
  return is_euclidean() ? Index{-1} : weighted_->G.rows();
}

void Kernel::check_dim_(const Vector& x) const {
  if (x.size() != weighted_->G.rows()) {
    throw std::invalid_argument("kernel: vector dimension does not match metric");
  }
}

double Kernel::value(const Vector& x) const {
  if (is_euclidean()) return 0.5 * x.squaredNorm();
  check_dim_(x);
  return 0.5 * x.dot(weighted_->G * x);
}

Vector Kernel::grad(const Vector& x) const {
  if (is_euclidean()) return x;
  check_dim_(x);
  return weighted_->G * x;
}

double Kernel::distance(const Vector& x, const Vector& y) const {
  if (x.size() != y.size()) {
    throw std::invalid_argument("bregman_distance: dimension mismatch");
  }
  Vector d = x - y;
  if (is_euclidean()) return 0.5 * d.squaredNorm();
  check_dim_(x);
  return 0.5 * d.dot(weighted_->G * d);
}

Vector Kernel::apply_metric(const Vector& v) const {
  if (is_euclidean()) return v;
  check_dim_(v);
  return weighted_->G * v;
}

Vector Kernel::solve_metric(const Vector& v) const {
  if (is_euclidean()) return v;
  check_dim_(v);
  return weighted_->llt.solve(v);
}

const Matrix& Kernel::metric() const {
  if (is_euclidean()) {
    throw std::logic_error("Euclidean kernel has no explicit metric matrix");
  }
  return weighted_->G;
}

double Kernel::metric_norm() const {
  return is_euclidean() ? 1.0 : weighted_->norm;
}

double Kernel::metric_min_eig() const {
  return is_euclidean() ? 1.0 : weighted_->min_eig;
}

double three_point_check(const Kernel& kernel, const Vector& x,
                         const Vector& a, const Vector& b) {
  if (x.size() != a.size() || a.size() != b.size()) {
    throw std::invalid_argument("three_point_check: dimension mismatch");
  }
  double lhs = kernel.distance(x, a) - kernel.distance(x, b) -
               kernel.distance(b, a);
  double rhs = (kernel.grad(b) - kernel.grad(a)).dot(x - b);
  return std::abs(lhs - rhs);
}

}  // namespace tbda
