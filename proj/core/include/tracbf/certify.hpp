#pragma once

#include <string>
#include <vector>

#include "tracbf/plants.hpp"
#include "tracbf/scenario.hpp"

namespace tracbf {

/// One checked inequality: pass means `lhs rel rhs` holds, rel is ">=" or
/// "<=". Printed one per line in reports.
struct CheckEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string rel = ">=";
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  bool pass = true;

  void add(std::string name, double lhs, double rhs, std::string rel = ">=");
  const CheckEntry* find(const std::string& name) const;
};

/// Start and gain conditions the theory requires before a run:
///  - start_adaptive:  h(x0) >= ||theta - theta_hat0||^2 / (2 lambda_min(Gamma))
///  - tuner_bandwidth: beta >= alpha / lambda_min(Gamma)
///  - start_tunable:   h(x0) - wq(nu0 - theta_hat0)
///                       >= theta_tilde_bound^2 / (2 lambda_min(Gamma))
///  - tracking_gain:   lambda_min(K) >= max(epsilon*mu/2, alpha*Mbar)
///  - start_robot:     h(q0) >= Mbar*||s0||^2/(2 mu)
///                       + theta_tilde_bound^2 / (2 mu lambda_min(Gamma))
/// Only the conditions applicable to the scenario's controller are evaluated.
CheckReport check_conditions(const ScenarioConfig& cfg);

struct MonitorTolerances {
  double invariance = 1e-6;   // absolute floor tolerance on h, h_a, B
  double gronwall = 1e-5;     // per-step exponential-decay slack
  double margin = 1e-10;      // applied-input constraint margin floor
  double vdot_rel = 1e-3;     // slack on the Lyapunov decrease, times max(1, V)
  double vdot_fraction = 0.999;  // fraction of points that must satisfy it
  double end_s = 0.05;        // ||s(T)|| cap
  double end_nu_gap = 0.05;   // ||nu(T) - theta_hat(T)|| cap
  double joint_slack = 1e-3;  // allowance over the joint box half-width
};

/// Invariance monitors for a double-integrator trace. Recomputes h and the
/// augmented barrier from the logged state and the true parameters:
/// three-term form h - wq(theta - nu) - wq(nu - theta_hat) under the tunable
/// controller, two-term form h - wq(theta - theta_hat) otherwise. Checks the
/// barrier floor, per-step Groenwall decay of the augmented barrier, and the
/// applied-input constraint margin. Read-only: the trace is never modified.
CheckReport monitor_affine(const std::vector<TraceRecord>& trace,
                           const ScenarioConfig& cfg,
                           const MonitorTolerances& tol = {});

/// Invariance and decrease monitors for a two-link trace: B = h - V/mu floor
/// and Groenwall decay, central-difference Lyapunov decrease against
/// -lambda_min(K)||s||^2 - (beta/2)||nu - theta_hat||^2, joint-limit bound,
/// end-of-run thresholds on ||s|| and ||nu - theta_hat||, constraint margin.
CheckReport monitor_robot(const std::vector<TraceRecord>& trace,
                          const ScenarioConfig& cfg,
                          const MonitorTolerances& tol = {});

struct EffortMetrics {
  double l2_effort = 0.0;    // trapezoidal integral of ||u||^2
  double smoothness = 0.0;   // sum of ||du/dt||^2 * dt over the logged grid
  double max_abs_u = 0.0;    // max over time of the largest |u_j|
};

EffortMetrics effort_metrics(const std::vector<TraceRecord>& trace);

/// Analytic time derivative of the robot Lyapunov function at one state,
/// computed from the closed-loop right sides. Used to validate the
/// finite-difference derivative in the monitors.
double robot_vdot_analytic(const TwoLinkArm& arm,
                           const RobotReferencePolicy& policy,
                           const ScenarioConfig& cfg, const VectorXd& q,
                           const VectorXd& qdot, const VectorXd& nu,
                           const VectorXd& theta_hat, double t);

}  // namespace tracbf
