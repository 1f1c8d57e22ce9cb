#include "tracbf/tuners.hpp"

namespace tracbf {

VectorXd gradient_update(const VectorXd& psi, const VectorXd& gamma_diag) {
  detail::require(psi.size() == gamma_diag.size(),
                  "gradient_update: dimension mismatch");
  return -(gamma_diag.array() * psi.array()).matrix();
}

TunerRates hot_update(const EstimatorState& est, const VectorXd& psi,
                      const VectorXd& gamma_diag, double beta) {
  detail::require(beta > 0.0, "hot_update: beta must be positive");
  detail::require(est.nu.size() == est.theta_hat.size(),
                  "hot_update: estimator stage mismatch");
  TunerRates r;
  r.nu_dot = gradient_update(psi, gamma_diag);
  r.theta_hat_dot =
      beta * (gamma_diag.array() * (est.nu - est.theta_hat).array()).matrix();
  return r;
}

TunerRates hot_update_robot(const EstimatorState& est, const MatrixXd& W,
                            const VectorXd& s, const VectorXd& gamma_diag,
                            double beta) {
  detail::require(W.rows() == s.size(), "hot_update_robot: W/s mismatch");
  return hot_update(est, W.transpose() * s, gamma_diag, beta);
}

VectorXd project_rate(const VectorXd& nu, const VectorXd& nu_dot,
                      const ProjectionBall& ball) {
  detail::require(ball.radius > 0.0, "project_rate: radius must be positive");
  detail::require(ball.boundary_layer > 0.0,
                  "project_rate: boundary layer must be positive");
  detail::require(nu.size() == ball.center.size(),
                  "project_rate: center dimension mismatch");
  const VectorXd d = nu - ball.center;
  const double p = (d.squaredNorm() - ball.radius * ball.radius) /
                   (ball.boundary_layer * ball.radius * ball.radius);
  if (p <= 0.0) return nu_dot;
  // grad p is radial, so the projector reduces to the radial rank-1 part
  const double radial = d.dot(nu_dot);
  if (radial <= 0.0) return nu_dot;
  return nu_dot - std::min(1.0, p) * (radial / d.squaredNorm()) * d;
}

}  // namespace tracbf
