#pragma once

#include "tracbf/barriers.hpp"
#include "tracbf/core.hpp"
#include "tracbf/safety_filters.hpp"

namespace tracbf {

enum class ControllerKind { ACBF, RACBF, TRACBF, SLOTINE_LI_HOT };

/// Scalar sinusoid x1d(t) = amplitude * sin(frequency * t), the tracking
/// target for the double-integrator scenarios.
struct SinusoidReference {
  double amplitude = 1.5;
  double frequency = 2.0;

  double value(double t) const;
  double rate(double t) const;
  double accel(double t) const;
};

/// All joints tracking amplitude * sin(frequency * t).
struct JointSinusoidTrajectory {
  double amplitude = 0.785398163397448279;
  double frequency = 2.0;
  int dof = 2;

  VectorXd pos(double t) const;
  VectorXd vel(double t) const;
  VectorXd acc(double t) const;
};

/// Certainty-equivalence backstepping for the uncertain double integrator.
/// With e1 = x1 - x1d, v = x1d_dot - k1*e1, e2 = x2 - v:
///   u = -theta_hat . (x1, x2) + v_dot - e1 - k2*e2,
/// which renders the (e1, e2) error dynamics Hurwitz when theta_hat = theta.
double backstepping_nominal(const VectorXd& x, const VectorXd& theta_hat,
                            double x1d, double x1d_dot, double x1d_ddot,
                            double k1 = 2.0, double k2 = 2.0);

/// Evaluated plant maps handed to control laws; deliberately excludes the
/// true parameters.
struct AffinePlantEval {
  VectorXd f;
  MatrixXd G;
  MatrixXd Phi;
};

struct AffineControlResult {
  VectorXd u;
  HalfSpaceConstraint constraint;
  double margin = 0.0;  // a.dot(u) - b at the applied input
};

/// Barrier constraint for the requested kind (ACBF / RACBF / TRACBF).
HalfSpaceConstraint make_affine_constraint(ControllerKind kind,
                                           const BarrierEval& bar,
                                           const AffinePlantEval& pe,
                                           const VectorXd& theta_hat,
                                           const GainSet& gains);

/// Nominal backstepping input filtered through the kind's constraint.
AffineControlResult affine_safety_controller(
    ControllerKind kind, const VectorXd& x, const VectorXd& theta_hat,
    const AffinePlantEval& pe, const BarrierEval& bar, const GainSet& gains,
    const SinusoidReference& ref, double t, double k1 = 2.0, double k2 = 2.0);

/// Desired reference velocity r_d = qd_dot - Lambda * (q - qd): tracks the
/// trajectory and contracts the position error at rate Lambda.
VectorXd desired_reference_rd(const VectorXd& q, double t,
                              const JointSinusoidTrajectory& traj,
                              const VectorXd& lambda_diag);

/// Adaptive tracking torque with the damping term the high-order tuner needs:
///   u = -K*s + W*theta_hat - (2/beta)*W*W^T*s.
VectorXd slotine_li_hot(const VectorXd& s, const MatrixXd& W,
                        const VectorXd& theta_hat, const VectorXd& k_diag,
                        double beta);

/// Reference pipeline for manipulator runs: filters the desired reference
/// velocity through the barrier constraint and differentiates it along the
/// flow. Shared by the simulation loop and the certificate monitors.
class RobotReferencePolicy {
 public:
  RobotReferencePolicy(SoftminBoxBarrier barrier, JointSinusoidTrajectory traj,
                       GainSet gains, double sigma);

  VectorXd desired(const VectorXd& q, double t) const;
  VectorXd velocity(const VectorXd& q, double t) const;
  VectorXd rate(const VectorXd& q, const VectorXd& qdot, double t) const;
  /// a.dot(r) - b of the reference-velocity constraint at the filtered r;
  /// -b when dh/dq = 0 (vacuous constraint).
  double margin(const VectorXd& q, double t) const;

  const SoftminBoxBarrier& barrier() const { return barrier_; }
  const JointSinusoidTrajectory& trajectory() const { return traj_; }

 private:
  SoftminBoxBarrier barrier_;
  JointSinusoidTrajectory traj_;
  GainSet gains_;
  double sigma_;
};

struct RobotControlResult {
  VectorXd u;
  VectorXd r;
  VectorXd rdot;
  VectorXd s;
  MatrixXd W;
  double margin = 0.0;
};

/// Full manipulator control law at one state: safe reference, sliding
/// variable, regressor, torque.
RobotControlResult robot_controller(const RobotReferencePolicy& policy,
                                    const VectorXd& q, const VectorXd& qdot,
                                    double t, const VectorXd& theta_hat,
                                    const GainSet& gains);

}  // namespace tracbf
