#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tracbf/plants.hpp"
#include "tracbf/scenario.hpp"

namespace tracbf {

enum class RunStatus { OK, DIVERGED };

struct RunSummary {
  double min_h = 0.0;
  double min_aug = 0.0;  // min over t of h_a (affine runs) or B (robot runs)
  double max_u_norm = 0.0;
  double l2_effort = 0.0;  // trapezoidal integral of ||u||^2
  double final_tracking_error = 0.0;
};

struct RunResult {
  std::vector<TraceRecord> trace;
  RunSummary summary;
  RunStatus status = RunStatus::OK;
  std::string message;  // divergence diagnostics, empty on success
};

using OdeRhs = std::function<VectorXd(const VectorXd&, double)>;

/// Classical fourth-order Runge-Kutta step; the right side is re-evaluated at
/// every stage, so closed-loop controls are recomputed per stage.
VectorXd rk4_step(const OdeRhs& f, const VectorXd& z, double t, double dt);

VectorXd euler_step(const OdeRhs& f, const VectorXd& z, double t, double dt);

/// Closed loop for the uncertain double integrator under a barrier
/// controller. Packed state [x; nu; theta_hat].
class AffineLoop {
 public:
  explicit AffineLoop(const ScenarioConfig& cfg);

  VectorXd initial_state() const;
  VectorXd rhs(const VectorXd& z, double t) const;
  VectorXd step(const VectorXd& z, double t, double dt) const;
  TraceRecord record(const VectorXd& z, double t) const;

  const DoubleIntegratorPlant& plant() const { return plant_; }

 private:
  ScenarioConfig cfg_;
  DoubleIntegratorPlant plant_;
  DoubleIntegratorBarrier barrier_;
  SinusoidReference ref_;
  ProjectionBall ball_;
};

/// Closed loop for the two-link arm under the adaptive tracking controller.
/// Packed state [q; qdot; nu; theta_hat].
class RobotLoop {
 public:
  explicit RobotLoop(const ScenarioConfig& cfg);

  VectorXd initial_state() const;
  VectorXd rhs(const VectorXd& z, double t) const;
  VectorXd step(const VectorXd& z, double t, double dt) const;
  TraceRecord record(const VectorXd& z, double t) const;

  const TwoLinkArm& plant() const { return arm_; }
  const RobotReferencePolicy& policy() const { return policy_; }

 private:
  ScenarioConfig cfg_;
  TwoLinkArm arm_;
  RobotReferencePolicy policy_;
  ProjectionBall ball_;
};

/// Integrate the scenario over its horizon. Non-finite state or any entry
/// exceeding 1e9 in magnitude stops the run with RunStatus::DIVERGED and the
/// trace collected so far; an infeasible constraint or singular mass matrix
/// mid-run is reported the same way.
RunResult run(const ScenarioConfig& cfg);

}  // namespace tracbf
