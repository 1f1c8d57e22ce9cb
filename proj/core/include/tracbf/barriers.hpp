#pragma once

#include "tracbf/core.hpp"

namespace tracbf {

/// Barrier value and gradient at one state.
struct BarrierEval {
  double value = 0.0;
  VectorXd grad;
};

/// Position-limit barrier for the scalar double integrator:
///   h(x) = (x1max^2 - x1^2) - (1/rho)*(x2 + delta*x1)^2.
/// The quadratic velocity penalty makes h decrease before the position bound
/// is reached, so a relative-degree-one condition on h suffices.
struct DoubleIntegratorBarrier {
  double x1max = 1.0;
  double rho = 50.0;
  double delta = 0.1;

  BarrierEval eval(const VectorXd& x) const;
};

/// Smooth inner approximation of the box |q_i| <= qm via a log-sum-exp
/// softmin over the per-joint margins qm^2 - q_i^2:
///   h(q) = -(1/lambda) * log( sum_i exp(-lambda*(qm^2 - q_i^2)) ).
/// Bounds: min_i(qm^2 - q_i^2) - log(n)/lambda <= h <= min_i(qm^2 - q_i^2).
struct SoftminBoxBarrier {
  double qm = 0.5;
  double lambda = 10.0;

  BarrierEval eval(const VectorXd& q) const;
};

/// Linear extended class-K: alpha * r. The only shape the certificates use.
double classk_apply(double alpha, double r);

}  // namespace tracbf
