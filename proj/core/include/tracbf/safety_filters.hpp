#pragma once

#include <functional>

#include "tracbf/barriers.hpp"
#include "tracbf/core.hpp"

namespace tracbf {

/// Affine input constraint a.dot(u) >= b.
struct HalfSpaceConstraint {
  VectorXd a;
  double b = 0.0;
};

/// A constraint with a = 0 and b > 0 excludes every input. Thrown rather than
/// silently clamped: it signals a misconfigured barrier or gain set.
struct InfeasibleConstraint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Minimum-deviation safety filter: the closed-form solution of
///   min 0.5*||u - u_des||^2  s.t.  a.dot(u) >= b,
/// i.e. u_des + max(0, b - a.dot(u_des)) / a.dot(a) * a.
/// With a = 0 the constraint is either vacuous (b <= 0, returns u_des) or
/// infeasible (throws).
VectorXd qp_filter(const VectorXd& u_des, const HalfSpaceConstraint& c);

/// Smooth variant: the hinge is replaced by a softplus gain
///   lambda = sigma * ln(1 + exp((b - a.dot(u_des)) / sigma)),
/// giving u = u_des + lambda * a / a.dot(a). The filtered input satisfies the
/// constraint with strictly positive margin sigma*ln(1+exp((a.u_des-b)/sigma))
/// and converges to qp_filter as sigma -> 0. Requires a != 0.
VectorXd smooth_filter(const VectorXd& u_des, const HalfSpaceConstraint& c,
                       double sigma);

/// psi = (dh/dx * G * Phi)^T, the regressor direction shared by the update
/// laws and the robustness margin.
VectorXd barrier_regressor(const BarrierEval& bar, const MatrixXd& G,
                           const MatrixXd& Phi);

/// Adaptive constraint without robustness margin or class-K relaxation:
///   dh/dx * (f + G*(u + Phi*theta_hat)) >= 0.
HalfSpaceConstraint build_acbf_constraint(const BarrierEval& bar,
                                          const VectorXd& f, const MatrixXd& G,
                                          const MatrixXd& Phi,
                                          const VectorXd& theta_hat,
                                          const GainSet& gains);

/// Robust adaptive constraint: the worst-case parameter-error quadratic
/// w = ||theta_tilde_bound||^2 / (2*lambda_min(Gamma)) shrinks the barrier,
///   dh/dx * (f + G*(u + Phi*theta_hat)) >= -alpha*(h - w).
HalfSpaceConstraint build_racbf_constraint(const BarrierEval& bar,
                                           const VectorXd& f, const MatrixXd& G,
                                           const MatrixXd& Phi,
                                           const VectorXd& theta_hat,
                                           const GainSet& gains);

/// Tunable robust adaptive constraint: racbf plus the tuner margin
/// (2/beta)*||psi||^2 on the right side.
HalfSpaceConstraint build_tracbf_constraint(const BarrierEval& bar,
                                            const VectorXd& f, const MatrixXd& G,
                                            const MatrixXd& Phi,
                                            const VectorXd& theta_hat,
                                            const GainSet& gains);

/// Constraint on the reference velocity for manipulator tracking:
///   dh/dq * r >= -alpha*(h - w/mu) + (1/epsilon)*||dh/dq||^2,
/// with w the worst-case parameter-error quadratic.
HalfSpaceConstraint build_reference_constraint(const BarrierEval& bar,
                                               const GainSet& gains);

/// Smooth-filters the desired reference r_des through the reference-velocity
/// constraint. At an interior critical point of h (dh/dq = 0) the constraint
/// is vacuous when its right side is non-positive (returns r_des) and
/// infeasible otherwise (throws).
VectorXd safe_reference_velocity(const BarrierEval& bar, const VectorXd& r_des,
                                 const GainSet& gains, double sigma);

using ReferenceVelocityFn =
    std::function<VectorXd(const VectorXd& q, double t)>;

/// d/dt of a reference-velocity field along the flow (q, qdot), by symmetric
/// differencing: [r(q + d*qdot, t + d) - r(q - d*qdot, t - d)] / (2d).
VectorXd reference_velocity_rate(const ReferenceVelocityFn& r,
                                 const VectorXd& q, const VectorXd& qdot,
                                 double t, double delta = 1e-5);

}  // namespace tracbf
