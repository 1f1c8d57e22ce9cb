#include "tracbf/barriers.hpp"

#include <cmath>

namespace tracbf {

BarrierEval DoubleIntegratorBarrier::eval(const VectorXd& x) const {
  detail::require(x.size() == 2, "DoubleIntegratorBarrier: state must be 2-D");
  detail::require(rho > 0.0, "DoubleIntegratorBarrier: rho must be positive");
  const double w = x[1] + delta * x[0];
  BarrierEval out;
  out.value = (x1max * x1max - x[0] * x[0]) - w * w / rho;
  out.grad = VectorXd(2);
  out.grad[0] = -2.0 * x[0] - (2.0 * delta / rho) * w;
  out.grad[1] = -(2.0 / rho) * w;
  return out;
}

BarrierEval SoftminBoxBarrier::eval(const VectorXd& q) const {
  const Eigen::Index n = q.size();
  detail::require(n > 0 && n <= kMaxStateDim, "SoftminBoxBarrier: bad dim");
  detail::require(lambda > 0.0, "SoftminBoxBarrier: lambda must be positive");

  // exponents e_i = -lambda*(qm^2 - q_i^2), shifted by their max so the sum
  // never overflows no matter how far outside the box q sits
  VectorXd e(n);
  for (Eigen::Index i = 0; i < n; ++i) e[i] = -lambda * (qm * qm - q[i] * q[i]);
  const double m = e.maxCoeff();

  double sum = 0.0;
  VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w[i] = std::exp(e[i] - m);
    sum += w[i];
  }
  w /= sum;  // softmin weights, sum to 1

  BarrierEval out;
  out.value = -(m + std::log(sum)) / lambda;
  out.grad = VectorXd(n);
  for (Eigen::Index i = 0; i < n; ++i) out.grad[i] = -2.0 * q[i] * w[i];
  return out;
}

double classk_apply(double alpha, double r) {
  detail::require(alpha > 0.0, "classk_apply: alpha must be positive");
  return alpha * r;
}

}  // namespace tracbf
