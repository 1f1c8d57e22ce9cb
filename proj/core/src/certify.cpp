#include "tracbf/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tracbf/barriers.hpp"
#include "tracbf/controllers.hpp"
#include "tracbf/tuners.hpp"

namespace tracbf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool holds(double lhs, double rhs, const std::string& rel) {
  return rel == ">=" ? lhs >= rhs : lhs <= rhs;
}

}  // namespace

void CheckReport::add(std::string name, double lhs, double rhs,
                      std::string rel) {
  CheckEntry e;
  e.name = std::move(name);
  e.lhs = lhs;
  e.rhs = rhs;
  e.rel = std::move(rel);
  e.pass = holds(e.lhs, e.rhs, e.rel);
  pass = pass && e.pass;
  entries.push_back(std::move(e));
}

const CheckEntry* CheckReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

CheckReport check_conditions(const ScenarioConfig& cfg) {
  CheckReport report;
  const double lam = min_eigen_diag(cfg.gains.Gamma);
  const double bound = cfg.gains.theta_tilde_bound;

  if (cfg.plant == PlantKind::DOUBLE_INTEGRATOR) {
    const DoubleIntegratorPlant plant;
    const double h0 = scenario_di_barrier(cfg).eval(cfg.x0).value;

    const VectorXd err = plant.theta_true() - cfg.theta_hat0;
    report.add("start_adaptive", h0, err.squaredNorm() / (2.0 * lam));

    if (cfg.controller == ControllerKind::TRACBF) {
      report.add("tuner_bandwidth", cfg.gains.beta, cfg.gains.alpha / lam);
      const double slack =
          weighted_quadratic(cfg.nu0 - cfg.theta_hat0, cfg.gains.Gamma);
      report.add("start_tunable", h0 - slack, bound * bound / (2.0 * lam));
    }
    return report;
  }

  const TwoLinkArm arm;
  const double mbar = arm.mass_upper_bound;
  const SoftminBoxBarrier barrier = scenario_box_barrier(cfg);
  const double h0 = barrier.eval(cfg.q0).value;

  report.add("tuner_bandwidth", cfg.gains.beta, cfg.gains.alpha / lam);
  report.add("tracking_gain", min_eigen_diag(cfg.gains.K),
             std::max(cfg.gains.epsilon * cfg.gains.mu / 2.0,
                      cfg.gains.alpha * mbar));

  const RobotReferencePolicy policy(barrier, scenario_trajectory(cfg),
                                    cfg.gains, cfg.sigma);
  const VectorXd s0 = cfg.qdot0 - policy.velocity(cfg.q0, 0.0);
  const double mu = cfg.gains.mu;
  report.add("start_robot", h0,
             mbar * s0.squaredNorm() / (2.0 * mu) +
                 bound * bound / (2.0 * mu * lam));
  return report;
}

CheckReport monitor_affine(const std::vector<TraceRecord>& trace,
                           const ScenarioConfig& cfg,
                           const MonitorTolerances& tol) {
  detail::require(cfg.plant == PlantKind::DOUBLE_INTEGRATOR,
                  "monitor_affine: scenario is not a double-integrator run");
  detail::require(!trace.empty(), "monitor_affine: empty trace");

  const DoubleIntegratorPlant plant;
  const VectorXd& theta = plant.theta_true();
  const DoubleIntegratorBarrier barrier = scenario_di_barrier(cfg);
  const bool tunable = cfg.controller == ControllerKind::TRACBF;

  double min_h = kInf, min_aug = kInf, min_decay = kInf, min_margin = kInf;
  double prev_aug = 0.0, prev_t = 0.0;
  for (size_t i = 0; i < trace.size(); ++i) {
    const TraceRecord& rec = trace[i];
    const double h = barrier.eval(rec.x).value;
    double aug = h;
    if (tunable) {
      aug -= weighted_quadratic(theta - rec.nu, cfg.gains.Gamma) +
             weighted_quadratic(rec.nu - rec.theta_hat, cfg.gains.Gamma);
    } else {
      aug -= weighted_quadratic(theta - rec.theta_hat, cfg.gains.Gamma);
    }
    min_h = std::min(min_h, h);
    min_aug = std::min(min_aug, aug);
    min_margin = std::min(min_margin, rec.constraint_margin);
    if (i > 0) {
      const double floor =
          prev_aug * std::exp(-cfg.gains.alpha * (rec.t - prev_t));
      min_decay = std::min(min_decay, aug - floor);
    }
    prev_aug = aug;
    prev_t = rec.t;
  }

  CheckReport report;
  report.add("barrier_floor", min_h, -tol.invariance);
  report.add("augmented_floor", min_aug, -tol.invariance);
  if (trace.size() > 1)
    report.add("augmented_decay", min_decay, -tol.gronwall);
  report.add("margin_floor", min_margin, -tol.margin);
  return report;
}

CheckReport monitor_robot(const std::vector<TraceRecord>& trace,
                          const ScenarioConfig& cfg,
                          const MonitorTolerances& tol) {
  detail::require(cfg.plant == PlantKind::TWO_LINK,
                  "monitor_robot: scenario is not a two-link run");
  detail::require(!trace.empty(), "monitor_robot: empty trace");

  const TwoLinkArm arm;
  const VectorXd& theta = arm.theta_true();
  const SoftminBoxBarrier barrier = scenario_box_barrier(cfg);
  const RobotReferencePolicy policy(barrier, scenario_trajectory(cfg),
                                    cfg.gains, cfg.sigma);
  const double lam_k = min_eigen_diag(cfg.gains.K);
  const double beta = cfg.gains.beta;

  const size_t n = trace.size();
  std::vector<double> vs(n);
  double min_h = kInf, min_b = kInf, min_decay = kInf, min_margin = kInf;
  double max_q = 0.0, prev_b = 0.0, prev_t = 0.0;
  VectorXd s_last, gap_last;
  for (size_t i = 0; i < n; ++i) {
    const TraceRecord& rec = trace[i];
    const VectorXd q = rec.x.segment(0, 2);
    const VectorXd qdot = rec.x.segment(2, 2);
    const VectorXd s = qdot - policy.velocity(q, rec.t);
    const double h = barrier.eval(q).value;
    const double v = 0.5 * s.dot(arm.mass_matrix(q) * s) +
                     weighted_quadratic(theta - rec.nu, cfg.gains.Gamma) +
                     weighted_quadratic(rec.nu - rec.theta_hat, cfg.gains.Gamma);
    const double b = h - v / cfg.gains.mu;

    vs[i] = v;
    min_h = std::min(min_h, h);
    min_b = std::min(min_b, b);
    min_margin = std::min(min_margin, rec.constraint_margin);
    max_q = std::max(max_q, q.cwiseAbs().maxCoeff());
    if (i > 0) {
      const double floor =
          prev_b * std::exp(-cfg.gains.alpha * (rec.t - prev_t));
      min_decay = std::min(min_decay, b - floor);
    }
    prev_b = b;
    prev_t = rec.t;
    if (i + 1 == n) {
      s_last = s;
      gap_last = rec.nu - rec.theta_hat;
    }
  }

  // Central-difference decrease check, interior points only. The bound is
  // what the closed loop establishes before any projection or filter slack,
  // so a small state-scaled tolerance absorbs discretization.
  size_t ok = 0, total = 0;
  for (size_t i = 1; i + 1 < n; ++i) {
    const TraceRecord& rec = trace[i];
    const double dtw = trace[i + 1].t - trace[i - 1].t;
    if (dtw <= 0.0) continue;
    const double vdot = (vs[i + 1] - vs[i - 1]) / dtw;
    const VectorXd q = rec.x.segment(0, 2);
    const VectorXd s = rec.x.segment(2, 2) - policy.velocity(q, rec.t);
    const VectorXd gap = rec.nu - rec.theta_hat;
    const double cap = -lam_k * s.squaredNorm() -
                       0.5 * beta * gap.squaredNorm() +
                       tol.vdot_rel * std::max(1.0, vs[i]);
    ++total;
    if (vdot <= cap) ++ok;
  }

  CheckReport report;
  report.add("barrier_floor", min_h, -tol.invariance);
  report.add("augmented_floor", min_b, -tol.invariance);
  if (n > 1) report.add("augmented_decay", min_decay, -tol.gronwall);
  if (total > 0)
    report.add("lyapunov_decrease", static_cast<double>(ok) / total,
               tol.vdot_fraction);
  report.add("joint_limit", max_q, cfg.qm + tol.joint_slack, "<=");
  report.add("sliding_end", s_last.norm(), tol.end_s, "<=");
  report.add("tuner_gap_end", gap_last.norm(), tol.end_nu_gap, "<=");
  report.add("margin_floor", min_margin, -tol.margin);
  return report;
}

EffortMetrics effort_metrics(const std::vector<TraceRecord>& trace) {
  EffortMetrics m;
  for (size_t i = 0; i < trace.size(); ++i) {
    if (trace[i].u.size() > 0)
      m.max_abs_u = std::max(m.max_abs_u, trace[i].u.cwiseAbs().maxCoeff());
    if (i == 0) continue;
    const double dt = trace[i].t - trace[i - 1].t;
    if (dt <= 0.0) continue;
    m.l2_effort += 0.5 * dt *
                   (trace[i].u.squaredNorm() + trace[i - 1].u.squaredNorm());
    m.smoothness += (trace[i].u - trace[i - 1].u).squaredNorm() / dt;
  }
  return m;
}

double robot_vdot_analytic(const TwoLinkArm& arm,
                           const RobotReferencePolicy& policy,
                           const ScenarioConfig& cfg, const VectorXd& q,
                           const VectorXd& qdot, const VectorXd& nu,
                           const VectorXd& theta_hat, double t) {
  const RobotControlResult ctl =
      robot_controller(policy, q, qdot, t, theta_hat, cfg.gains);
  const VectorXd& theta = arm.theta_true();

  // M*s_dot = u - C*s - W*theta along the closed loop.
  const MatrixXd c = arm.coriolis_matrix(q, qdot);
  const VectorXd ms_dot = ctl.u - c * ctl.s - ctl.W * theta;
  double vdot = ctl.s.dot(ms_dot) +
                0.5 * ctl.s.dot(arm.mass_matrix_rate(q, qdot) * ctl.s);

  EstimatorState est{nu, theta_hat};
  TunerRates rates =
      hot_update_robot(est, ctl.W, ctl.s, cfg.gains.Gamma, cfg.gains.beta);
  if (cfg.projection.enabled)
    rates.nu_dot = project_rate(nu, rates.nu_dot, scenario_projection_ball(cfg));

  const VectorXd inv_gamma = cfg.gains.Gamma.cwiseInverse();
  vdot -= (theta - nu).dot(inv_gamma.cwiseProduct(rates.nu_dot));
  vdot += (nu - theta_hat)
              .dot(inv_gamma.cwiseProduct(rates.nu_dot - rates.theta_hat_dot));
  return vdot;
}

}  // namespace tracbf
