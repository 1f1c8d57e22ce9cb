#pragma once

#include "tracbf/core.hpp"

namespace tracbf {

/// Control-affine plant with linearly parameterized matched uncertainty:
///   x_dot = f(x) + G(x) * (u + Phi(x) * theta).
/// Controllers receive evaluated f/G/Phi only; theta_true is consumed by the
/// simulation loop and the certificate monitors, never by a control law.
struct DoubleIntegratorPlant {
  VectorXd theta{VectorXd(2)};

  DoubleIntegratorPlant() { theta << 10.0, 10.0; }

  static constexpr int state_dim = 2;
  static constexpr int input_dim = 1;
  static constexpr int param_dim = 2;

  VectorXd f(const VectorXd& x) const;
  MatrixXd G(const VectorXd& x) const;
  /// Phi(x) = [x1  x2], a 1x2 regressor row: the uncertainty is
  /// theta1*x1 + theta2*x2 entering through the input channel.
  MatrixXd Phi(const VectorXd& x) const;

  const VectorXd& theta_true() const { return theta; }
};

/// Planar two-link arm with unit-length links, gravity-free:
///   M(q)*qddot + C(q, qdot)*qdot = u,
/// parameterized by p = (p1, p2, p3) entering linearly.
struct TwoLinkArm {
  VectorXd p{VectorXd(3)};
  double mass_upper_bound = 5.0;  // lambda_max(M(q)) <= this for all q

  TwoLinkArm() { p << 3.473, 0.196, 0.242; }

  static constexpr int dof = 2;
  static constexpr int param_dim = 3;

  MatrixXd mass_matrix(const VectorXd& q) const;
  MatrixXd coriolis_matrix(const VectorXd& q, const VectorXd& qdot) const;
  VectorXd gravity(const VectorXd& q) const;
  /// dM/dt along (q, qdot); closed form, used to check the skew symmetry of
  /// 0.5*M_dot - C.
  MatrixXd mass_matrix_rate(const VectorXd& q, const VectorXd& qdot) const;

  const VectorXd& theta_true() const { return p; }
};

/// Linear-in-parameters regressor Y(q, qdot, r, rdot) with
///   Y * p = M(q)*rdot + C(q, qdot)*r + g(q)
/// for every parameter vector p.
MatrixXd lip_regressor(const VectorXd& q, const VectorXd& qdot,
                       const VectorXd& r, const VectorXd& rdot);

/// Forward dynamics qddot = M(q)^{-1} * (u - C*qdot - g). Throws
/// std::domain_error if the mass matrix is numerically singular.
VectorXd manipulator_accel(const TwoLinkArm& arm, const VectorXd& q,
                           const VectorXd& qdot, const VectorXd& u);

/// s = qdot - r, the velocity error against the (safe) reference.
VectorXd sliding_variable(const VectorXd& qdot, const VectorXd& r);

}  // namespace tracbf
