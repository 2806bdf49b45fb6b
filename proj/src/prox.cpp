#include "tbda/prox.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace tbda {

namespace {

double power_lambda_max(const Matrix& Q, int iters = 500) {
  const Index n = Q.rows();
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double lam = 0.0;
  for (int it = 0; it < iters; ++it) {
    Vector w = Q * v;
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    double lam_new = v.dot(w);
    v = w / nw;
    if (it > 2 && std::abs(lam_new - lam) <= 1e-13 * std::abs(lam_new)) {
      return lam_new;
    }
    lam = lam_new;
  }
  return lam;
}

}  // namespace

Matrix shrink_l1(const Matrix& Z, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument("shrink_l1: threshold must be >= 0");
  }
  return Z.unaryExpr([threshold](double z) {
    double m = std::abs(z) - threshold;
    return m > 0.0 ? (z > 0.0 ? m : -m) : 0.0;
  });
}

Matrix svt(const Matrix& X, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument("svt: threshold must be >= 0");
  }
  Eigen::BDCSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector s = svd.singularValues();
  for (Index i = 0; i < s.size(); ++i) {
    double m = s[i] - threshold;
    s[i] = m > 0.0 ? m : 0.0;
  }
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

Vector prox_quadratic_nonneg(const Matrix& Q, const Vector& q,
                             const Vector& tilt, const Vector& anchor,
                             double r) {
  if (!(r > power_lambda_max(Q))) {
    throw std::invalid_argument(
        "prox_quadratic_nonneg: r <= lambda_max(Q), proximal metric invalid");
  }
  return (anchor - (Q * anchor + q + tilt) / r).cwiseMax(0.0);
}

struct ProxFn::Data {
  // Linear / LinearNonneg
  Vector c;
  // L1 / Nuclear
  double lambda = 0.0;
  Index rows = 0, cols = 0;
  // Quadratic family
  Matrix Q;
  Vector q;
  double lambda_max = 0.0;
  double r = 0.0;
  double mu = 0.0;
  Kernel paired;
  // Separable
  std::vector<ProxFn> parts;
};

ProxFn ProxFn::linear(Vector c) {
  ProxFn f;
  f.kind_ = Kind::Linear;
  f.dim_ = c.size();
  auto d = std::make_shared<Data>();
  d->c = std::move(c);
  f.data_ = std::move(d);
  return f;
}

ProxFn ProxFn::linear_nonneg(Vector c) {
  ProxFn f = linear(std::move(c));
  f.kind_ = Kind::LinearNonneg;
  return f;
}

ProxFn ProxFn::nonneg(Index dim) {
  ProxFn f = linear_nonneg(Vector::Zero(dim));
  f.kind_ = Kind::NonnegIndicator;
  return f;
}

ProxFn ProxFn::l1(double lambda, Index rows, Index cols) {
  if (lambda < 0.0) throw std::invalid_argument("l1: lambda must be >= 0");
  ProxFn f;
  f.kind_ = Kind::L1;
  f.dim_ = rows * cols;
  auto d = std::make_shared<Data>();
  d->lambda = lambda;
  d->rows = rows;
  d->cols = cols;
  f.data_ = std::move(d);
  return f;
}

ProxFn ProxFn::nuclear(Index rows, Index cols) {
  ProxFn f;
  f.kind_ = Kind::Nuclear;
  f.dim_ = rows * cols;
  auto d = std::make_shared<Data>();
  d->rows = rows;
  d->cols = cols;
  f.data_ = std::move(d);
  return f;
}

ProxFn ProxFn::quadratic(Matrix Q, Vector q) {
  if (Q.rows() != Q.cols() || Q.rows() != q.size()) {
    throw std::invalid_argument("quadratic: dimension mismatch");
  }
  ProxFn f;
  f.kind_ = Kind::Quadratic;
  f.dim_ = q.size();
  auto d = std::make_shared<Data>();
  d->Q = std::move(Q);
  d->q = std::move(q);
  f.data_ = std::move(d);
  return f;
}

ProxFn ProxFn::quadratic_nonneg(Matrix Q, Vector q, double mu) {
  if (Q.rows() != Q.cols() || Q.rows() != q.size()) {
    throw std::invalid_argument("quadratic_nonneg: dimension mismatch");
  }
  if (!(mu > 0.0)) {
    throw std::invalid_argument("quadratic_nonneg: mu must be > 0");
  }
  auto d = std::make_shared<Data>();
  d->lambda_max = power_lambda_max(Q);
  d->r = mu * d->lambda_max + 3.0;
  d->mu = mu;
  if (!(d->r > d->lambda_max)) {
    throw std::invalid_argument(
        "quadratic_nonneg: r <= lambda_max(Q), proximal metric invalid");
  }
  Matrix G = -Q;
  G.diagonal().array() += d->r;
  G /= mu;
  G = 0.5 * (G + G.transpose().eval());  // exact symmetry for the kernel
  d->paired = Kernel::weighted(std::move(G));
  d->Q = std::move(Q);
  d->q = std::move(q);
  ProxFn f;
  f.kind_ = Kind::QuadraticNonneg;
  f.dim_ = d->q.size();
  f.data_ = std::move(d);
  return f;
}

ProxFn ProxFn::quadratic_nonneg_euclid(Matrix Q, Vector q) {
  ProxFn f = quadratic(std::move(Q), std::move(q));
  f.kind_ = Kind::QuadraticNonnegEuclid;
  auto d = std::make_shared<Data>(*f.data_);
  d->lambda_max = power_lambda_max(d->Q);
  f.data_ = std::move(d);
  return f;
}

ProxFn ProxFn::separable(std::vector<ProxFn> parts) {
  if (parts.empty()) throw std::invalid_argument("separable: no parts");
  ProxFn f;
  f.kind_ = Kind::Separable;
  auto d = std::make_shared<Data>();
  f.dim_ = 0;
  for (const auto& p : parts) f.dim_ += p.dim();
  d->parts = std::move(parts);
  f.data_ = std::move(d);
  return f;
}

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Vector ProxFn::prox(const Kernel& kernel, const Vector& anchor,
                    const Vector& tilt, double weight) const {
  require(anchor.size() == dim_ && tilt.size() == dim_,
          "prox: dimension mismatch");
  require(weight > 0.0, "prox: weight must be > 0");
  switch (kind_) {
    case Kind::Linear: {
      Vector g = data_->c + tilt;
      if (kernel.is_euclidean()) return anchor - g / weight;
      return anchor - kernel.solve_metric(g) / weight;
    }
    case Kind::LinearNonneg:
    case Kind::NonnegIndicator: {
      require(kernel.is_euclidean(),
              "prox: nonneg-constrained linear oracle supports only the "
              "Euclidean kernel");
      return (anchor - (data_->c + tilt) / weight).cwiseMax(0.0);
    }
    case Kind::L1: {
      require(kernel.is_euclidean(),
              "prox: l1 oracle supports only the Euclidean kernel");
      Eigen::Map<const Matrix> Z(anchor.data(), data_->rows, data_->cols);
      Eigen::Map<const Matrix> T(tilt.data(), data_->rows, data_->cols);
      Matrix out = shrink_l1(Z - T / weight, data_->lambda / weight);
      return Eigen::Map<Vector>(out.data(), dim_);
    }
    case Kind::Nuclear: {
      require(kernel.is_euclidean(),
              "prox: nuclear oracle supports only the Euclidean kernel");
      Eigen::Map<const Matrix> X(anchor.data(), data_->rows, data_->cols);
      Eigen::Map<const Matrix> T(tilt.data(), data_->rows, data_->cols);
      Matrix out = svt(X - T / weight, 1.0 / weight);
      return Eigen::Map<Vector>(out.data(), dim_);
    }
    case Kind::Quadratic: {
      // (Q + w G) u = w G anchor - q - tilt
      Matrix H = data_->Q;
      if (kernel.is_euclidean()) {
        H.diagonal().array() += weight;
        return Eigen::LLT<Matrix>(H).solve(weight * anchor - data_->q - tilt);
      }
      H += weight * kernel.metric();
      return Eigen::LLT<Matrix>(H).solve(
          weight * kernel.apply_metric(anchor) - data_->q - tilt);
    }
    case Kind::QuadraticNonneg: {
      require(kernel.shares_metric_with(data_->paired),
              "prox: quadratic_nonneg oracle is fused with its own kernel");
      require(std::abs(weight - data_->mu) <= 1e-9 * data_->mu,
              "prox: quadratic_nonneg oracle built for a different weight");
      return (anchor - (data_->Q * anchor + data_->q + tilt) / data_->r)
          .cwiseMax(0.0);
    }
    case Kind::QuadraticNonnegEuclid: {
      require(kernel.is_euclidean(),
              "prox: quadratic_nonneg_euclid supports only the Euclidean "
              "kernel");
      // Projected gradient with fixed step 1/L on the strongly convex
      // subproblem; linear convergence, run to fixed-point accuracy.
      const double L = data_->lambda_max + weight;
      Vector u = anchor.cwiseMax(0.0);
      Vector grad(dim_), next(dim_);
      const double eps = 1e-14;
      for (int it = 0; it < 200000; ++it) {
        grad = data_->Q * u + data_->q + tilt + weight * (u - anchor);
        next = (u - grad / L).cwiseMax(0.0);
        double delta = (next - u).norm();
        u.swap(next);
        if (delta <= eps * std::max(1.0, u.norm())) break;
      }
      return u;
    }
    case Kind::Separable: {
      require(kernel.is_euclidean(),
              "prox: separable oracle supports only the Euclidean kernel");
      Vector out(dim_);
      Index off = 0;
      for (const auto& p : data_->parts) {
        out.segment(off, p.dim()) = p.prox(
            kernel, anchor.segment(off, p.dim()), tilt.segment(off, p.dim()),
            weight);
        off += p.dim();
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

double ProxFn::value(const Vector& u) const {
  require(u.size() == dim_, "value: dimension mismatch");
  switch (kind_) {
    case Kind::Linear:
    case Kind::LinearNonneg:
    case Kind::NonnegIndicator:
      return data_->c.dot(u);
    case Kind::L1:
      return data_->lambda * u.cwiseAbs().sum();
    case Kind::Nuclear: {
      Eigen::Map<const Matrix> X(u.data(), data_->rows, data_->cols);
      Eigen::BDCSVD<Matrix> svd(X);
      return svd.singularValues().sum();
    }
    case Kind::Quadratic:
    case Kind::QuadraticNonneg:
    case Kind::QuadraticNonnegEuclid:
      return 0.5 * u.dot(data_->Q * u) + data_->q.dot(u);
    case Kind::Separable: {
      double v = 0.0;
      Index off = 0;
      for (const auto& p : data_->parts) {
        v += p.value(u.segment(off, p.dim()));
        off += p.dim();
      }
      return v;
    }
  }
  throw std::logic_error("unreachable");
}

bool ProxFn::feasible(const Vector& u, double tol) const {
  require(u.size() == dim_, "feasible: dimension mismatch");
  switch (kind_) {
    case Kind::Linear:
    case Kind::L1:
    case Kind::Nuclear:
    case Kind::Quadratic:
      return true;
    case Kind::LinearNonneg:
    case Kind::NonnegIndicator:
    case Kind::QuadraticNonneg:
    case Kind::QuadraticNonnegEuclid:
      return u.minCoeff() >= -tol;
    case Kind::Separable: {
      Index off = 0;
      for (const auto& p : data_->parts) {
        if (!p.feasible(u.segment(off, p.dim()), tol)) return false;
        off += p.dim();
      }
      return true;
    }
  }
  throw std::logic_error("unreachable");
}

const Kernel& ProxFn::paired_kernel() const {
  require(kind_ == Kind::QuadraticNonneg,
          "paired_kernel: only quadratic_nonneg oracles carry one");
  return data_->paired;
}

double ProxFn::cancel_r() const {
  require(kind_ == Kind::QuadraticNonneg, "cancel_r: wrong oracle kind");
  return data_->r;
}

double ProxFn::cancel_mu() const {
  require(kind_ == Kind::QuadraticNonneg, "cancel_mu: wrong oracle kind");
  return data_->mu;
}

}  // namespace tbda
