#include "tracbf/controllers.hpp"

#include <cmath>

#include "tracbf/plants.hpp"

namespace tracbf {

double SinusoidReference::value(double t) const {
  return amplitude * std::sin(frequency * t);
}
double SinusoidReference::rate(double t) const {
  return amplitude * frequency * std::cos(frequency * t);
}
double SinusoidReference::accel(double t) const {
  return -amplitude * frequency * frequency * std::sin(frequency * t);
}

VectorXd JointSinusoidTrajectory::pos(double t) const {
  return VectorXd::Constant(dof, amplitude * std::sin(frequency * t));
}
VectorXd JointSinusoidTrajectory::vel(double t) const {
  return VectorXd::Constant(dof, amplitude * frequency * std::cos(frequency * t));
}
VectorXd JointSinusoidTrajectory::acc(double t) const {
  return VectorXd::Constant(
      dof, -amplitude * frequency * frequency * std::sin(frequency * t));
}

double backstepping_nominal(const VectorXd& x, const VectorXd& theta_hat,
                            double x1d, double x1d_dot, double x1d_ddot,
                            double k1, double k2) {
  detail::require(x.size() == 2 && theta_hat.size() == 2,
                  "backstepping_nominal: 2-D state and parameters");
  const double e1 = x[0] - x1d;
  const double v = x1d_dot - k1 * e1;
  const double e2 = x[1] - v;
  const double v_dot = x1d_ddot - k1 * (x[1] - x1d_dot);
  return -(theta_hat[0] * x[0] + theta_hat[1] * x[1]) + v_dot - e1 - k2 * e2;
}

HalfSpaceConstraint make_affine_constraint(ControllerKind kind,
                                           const BarrierEval& bar,
                                           const AffinePlantEval& pe,
                                           const VectorXd& theta_hat,
                                           const GainSet& gains) {
  switch (kind) {
    case ControllerKind::ACBF:
      return build_acbf_constraint(bar, pe.f, pe.G, pe.Phi, theta_hat, gains);
    case ControllerKind::RACBF:
      return build_racbf_constraint(bar, pe.f, pe.G, pe.Phi, theta_hat, gains);
    case ControllerKind::TRACBF:
      return build_tracbf_constraint(bar, pe.f, pe.G, pe.Phi, theta_hat, gains);
    default:
      throw std::invalid_argument(
          "make_affine_constraint: kind must be a barrier controller");
  }
}

AffineControlResult affine_safety_controller(
    ControllerKind kind, const VectorXd& x, const VectorXd& theta_hat,
    const AffinePlantEval& pe, const BarrierEval& bar, const GainSet& gains,
    const SinusoidReference& ref, double t, double k1, double k2) {
  const double u_nom = backstepping_nominal(x, theta_hat, ref.value(t),
                                            ref.rate(t), ref.accel(t), k1, k2);
  AffineControlResult out;
  out.constraint = make_affine_constraint(kind, bar, pe, theta_hat, gains);
  VectorXd u_des(1);
  u_des << u_nom;
  out.u = qp_filter(u_des, out.constraint);
  out.margin = out.constraint.a.dot(out.u) - out.constraint.b;
  return out;
}

VectorXd desired_reference_rd(const VectorXd& q, double t,
                              const JointSinusoidTrajectory& traj,
                              const VectorXd& lambda_diag) {
  detail::require(q.size() == lambda_diag.size(),
                  "desired_reference_rd: dimension mismatch");
  const VectorXd err = q - traj.pos(t);
  return traj.vel(t) - (lambda_diag.array() * err.array()).matrix();
}

VectorXd slotine_li_hot(const VectorXd& s, const MatrixXd& W,
                        const VectorXd& theta_hat, const VectorXd& k_diag,
                        double beta) {
  detail::require(beta > 0.0, "slotine_li_hot: beta must be positive");
  detail::require(s.size() == k_diag.size(), "slotine_li_hot: K/s mismatch");
  detail::require(W.rows() == s.size() && W.cols() == theta_hat.size(),
                  "slotine_li_hot: regressor shape mismatch");
  return -(k_diag.array() * s.array()).matrix() + W * theta_hat -
         (2.0 / beta) * (W * (W.transpose() * s));
}

RobotReferencePolicy::RobotReferencePolicy(SoftminBoxBarrier barrier,
                                           JointSinusoidTrajectory traj,
                                           GainSet gains, double sigma)
    : barrier_(barrier), traj_(traj), gains_(std::move(gains)), sigma_(sigma) {
  detail::require(sigma_ > 0.0, "RobotReferencePolicy: sigma must be positive");
}

VectorXd RobotReferencePolicy::desired(const VectorXd& q, double t) const {
  return desired_reference_rd(q, t, traj_, gains_.Lambda);
}

VectorXd RobotReferencePolicy::velocity(const VectorXd& q, double t) const {
  return safe_reference_velocity(barrier_.eval(q), desired(q, t), gains_,
                                 sigma_);
}

VectorXd RobotReferencePolicy::rate(const VectorXd& q, const VectorXd& qdot,
                                    double t) const {
  return reference_velocity_rate(
      [this](const VectorXd& qq, double tt) { return velocity(qq, tt); }, q,
      qdot, t);
}

double RobotReferencePolicy::margin(const VectorXd& q, double t) const {
  const BarrierEval bar = barrier_.eval(q);
  const HalfSpaceConstraint c = build_reference_constraint(bar, gains_);
  if (c.a.squaredNorm() == 0.0) return -c.b;
  return c.a.dot(velocity(q, t)) - c.b;
}

RobotControlResult robot_controller(const RobotReferencePolicy& policy,
                                    const VectorXd& q, const VectorXd& qdot,
                                    double t, const VectorXd& theta_hat,
                                    const GainSet& gains) {
  RobotControlResult out;
  out.r = policy.velocity(q, t);
  out.rdot = policy.rate(q, qdot, t);
  out.s = sliding_variable(qdot, out.r);
  out.W = lip_regressor(q, qdot, out.r, out.rdot);
  out.u = slotine_li_hot(out.s, out.W, theta_hat, gains.K, gains.beta);
  out.margin = policy.margin(q, t);
  return out;
}

}  // namespace tracbf
