#include "tracbf/plants.hpp"

#include <cmath>

namespace tracbf {

VectorXd DoubleIntegratorPlant::f(const VectorXd& x) const {
  detail::require(x.size() == 2, "DoubleIntegratorPlant: state must be 2-D");
  VectorXd out(2);
  out << x[1], 0.0;
  return out;
}

MatrixXd DoubleIntegratorPlant::G(const VectorXd&) const {
  MatrixXd g(2, 1);
  g << 0.0, 1.0;
  return g;
}

MatrixXd DoubleIntegratorPlant::Phi(const VectorXd& x) const {
  detail::require(x.size() == 2, "DoubleIntegratorPlant: state must be 2-D");
  MatrixXd phi(1, 2);
  phi << x[0], x[1];
  return phi;
}

MatrixXd TwoLinkArm::mass_matrix(const VectorXd& q) const {
  detail::require(q.size() == 2, "TwoLinkArm: q must be 2-D");
  const double c2 = std::cos(q[1]);
  MatrixXd M(2, 2);
  M << p[0] + 2.0 * p[2] * c2, p[1] + p[2] * c2,
       p[1] + p[2] * c2,       p[1];
  return M;
}

MatrixXd TwoLinkArm::coriolis_matrix(const VectorXd& q,
                                     const VectorXd& qdot) const {
  detail::require(q.size() == 2 && qdot.size() == 2, "TwoLinkArm: bad dims");
  const double s2 = std::sin(q[1]);
  MatrixXd C(2, 2);
  C << -p[2] * s2 * qdot[1], -p[2] * s2 * (qdot[0] + qdot[1]),
        p[2] * s2 * qdot[0], 0.0;
  return C;
}

VectorXd TwoLinkArm::gravity(const VectorXd& q) const {
  detail::require(q.size() == 2, "TwoLinkArm: q must be 2-D");
  return VectorXd::Zero(2);  // horizontal plane
}

MatrixXd TwoLinkArm::mass_matrix_rate(const VectorXd& q,
                                      const VectorXd& qdot) const {
  detail::require(q.size() == 2 && qdot.size() == 2, "TwoLinkArm: bad dims");
  const double d = -p[2] * std::sin(q[1]) * qdot[1];
  MatrixXd Mdot(2, 2);
  Mdot << 2.0 * d, d,
          d,       0.0;
  return Mdot;
}

MatrixXd lip_regressor(const VectorXd& q, const VectorXd& qdot,
                       const VectorXd& r, const VectorXd& rdot) {
  detail::require(q.size() == 2 && qdot.size() == 2 && r.size() == 2 &&
                      rdot.size() == 2,
                  "lip_regressor: all arguments must be 2-D");
  const double c2 = std::cos(q[1]);
  const double s2 = std::sin(q[1]);
  MatrixXd Y(2, 3);
  Y << rdot[0], rdot[1],
       2.0 * c2 * rdot[0] + c2 * rdot[1] - s2 * qdot[1] * r[0] -
           s2 * (qdot[0] + qdot[1]) * r[1],
       0.0, rdot[0] + rdot[1],
       c2 * rdot[0] + s2 * qdot[0] * r[0];
  return Y;
}

VectorXd manipulator_accel(const TwoLinkArm& arm, const VectorXd& q,
                           const VectorXd& qdot, const VectorXd& u) {
  detail::require(u.size() == 2, "manipulator_accel: u must be 2-D");
  const MatrixXd M = arm.mass_matrix(q);
  const double det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  if (std::abs(det) < 1e-9)
    throw std::domain_error("manipulator_accel: singular mass matrix");
  const VectorXd rhs =
      u - arm.coriolis_matrix(q, qdot) * qdot - arm.gravity(q);
  VectorXd qddot(2);
  qddot[0] = (M(1, 1) * rhs[0] - M(0, 1) * rhs[1]) / det;
  qddot[1] = (-M(1, 0) * rhs[0] + M(0, 0) * rhs[1]) / det;
  return qddot;
}

VectorXd sliding_variable(const VectorXd& qdot, const VectorXd& r) {
  detail::require(qdot.size() == r.size(), "sliding_variable: dim mismatch");
  return qdot - r;
}

}  // namespace tracbf
