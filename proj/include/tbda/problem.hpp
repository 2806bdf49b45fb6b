#pragma once

#include <optional>

#include "tbda/kernels.hpp"
#include "tbda/linops.hpp"
#include "tbda/prox.hpp"
#include "tbda/types.hpp"

namespace tbda {

struct SaddlePoint {
  Vector x;
  Vector y;
};

struct GapValues {
  double primal = 0.0;  // P(x) = f(x) - f(x*) + <x - x*, A^T y*>
  double dual = 0.0;    // D(y) = g(y) - g(y*) + <y - y*, -A x*>
  double total = 0.0;   // G = P + D
};

/// A bilinear saddle point problem
///   min_x max_y  f(x) + <Ax, y> - g(y)
/// together with the three kernels the triple-Bregman schemes use:
/// phi for the dual prediction, psi for the primal update, phi_hat for the
/// dual correction. An optional known saddle point enables gap evaluation
/// and the known-solution stopping rule.
class SaddleProblem {
 public:
  SaddleProblem(ProxFn f, ProxFn g, LinearMap A, Kernel phi, Kernel psi,
                Kernel phi_hat,
                std::optional<SaddlePoint> saddle = std::nullopt);

  const ProxFn& f() const { return f_; }
  const ProxFn& g() const { return g_; }
  const LinearMap& coupling() const { return A_; }
  const Kernel& phi() const { return phi_; }
  const Kernel& psi() const { return psi_; }
  const Kernel& phi_hat() const { return phi_hat_; }
  const std::optional<SaddlePoint>& saddle() const { return saddle_; }

  Index primal_dim() const { return A_.cols(); }
  Index dual_dim() const { return A_.rows(); }

  /// argmin_x f(x) + <tilt, x> + weight B_psi(x, anchor).
  Vector f_prox(const Vector& anchor, const Vector& tilt, double weight) const {
    return f_.prox(psi_, anchor, tilt, weight);
  }
  /// argmin_y g(y) + <tilt, y> + weight B_phi(y, anchor).
  Vector g_prox_predict(const Vector& anchor, const Vector& tilt,
                        double weight) const {
    return g_.prox(phi_, anchor, tilt, weight);
  }
  /// argmin_y g(y) + <tilt, y> + weight B_phi_hat(y, anchor).
  Vector g_prox_correct(const Vector& anchor, const Vector& tilt,
                        double weight) const {
    return g_.prox(phi_hat_, anchor, tilt, weight);
  }

  /// Primal/dual suboptimality against the attached saddle point. Throws if
  /// no saddle is attached or if the point is infeasible (constraint sets
  /// are handled by feasibility checks, never by infinite values).
  GapValues gap(const Vector& x, const Vector& y) const;

  /// With phi_hat := phi, as the symmetric schemes (SPIDA) require.
  SaddleProblem with_shared_dual_kernel() const {
    return SaddleProblem(f_, g_, A_, phi_, psi_, phi_, saddle_);
  }

 private:
  ProxFn f_;
  ProxFn g_;
  LinearMap A_;
  Kernel phi_, psi_, phi_hat_;
  std::optional<SaddlePoint> saddle_;
};

}  // namespace tbda
