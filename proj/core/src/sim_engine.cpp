#include "tracbf/sim_engine.hpp"

#include <cmath>
#include <limits>

#include "tracbf/tuners.hpp"

namespace tracbf {

VectorXd rk4_step(const OdeRhs& f, const VectorXd& z, double t, double dt) {
  const VectorXd k1 = f(z, t);
  const VectorXd k2 = f(z + 0.5 * dt * k1, t + 0.5 * dt);
  const VectorXd k3 = f(z + 0.5 * dt * k2, t + 0.5 * dt);
  const VectorXd k4 = f(z + dt * k3, t + dt);
  return z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

VectorXd euler_step(const OdeRhs& f, const VectorXd& z, double t, double dt) {
  return z + dt * f(z, t);
}

namespace {

bool state_ok(const VectorXd& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i]) || std::abs(z[i]) > 1e9) return false;
  }
  return true;
}

}  // namespace

AffineLoop::AffineLoop(const ScenarioConfig& cfg)
    : cfg_(cfg),
      barrier_(scenario_di_barrier(cfg)),
      ref_(scenario_reference(cfg)) {
  detail::require(cfg.plant == PlantKind::DOUBLE_INTEGRATOR,
                  "AffineLoop: scenario is not a double-integrator run");
  if (cfg_.projection.enabled) ball_ = scenario_projection_ball(cfg_);
}

VectorXd AffineLoop::initial_state() const {
  VectorXd z(6);
  z << cfg_.x0, cfg_.nu0, cfg_.theta_hat0;
  return z;
}

VectorXd AffineLoop::rhs(const VectorXd& z, double t) const {
  const VectorXd x = z.segment(0, 2);
  const VectorXd nu = z.segment(2, 2);
  const VectorXd th = z.segment(4, 2);

  const AffinePlantEval pe{plant_.f(x), plant_.G(x), plant_.Phi(x)};
  const BarrierEval bar = barrier_.eval(x);
  const AffineControlResult ctl = affine_safety_controller(
      cfg_.controller, x, th, pe, bar, cfg_.gains, ref_, t, cfg_.k1, cfg_.k2);

  const VectorXd xdot =
      pe.f + pe.G * (ctl.u + pe.Phi * plant_.theta_true());

  const VectorXd psi = barrier_regressor(bar, pe.G, pe.Phi);
  VectorXd nu_dot = gradient_update(psi, cfg_.gains.Gamma);
  if (cfg_.projection.enabled) nu_dot = project_rate(nu, nu_dot, ball_);

  VectorXd th_dot;
  if (cfg_.controller == ControllerKind::TRACBF) {
    // low-pass stage of the high-order tuner; the projection touches only nu
    th_dot = cfg_.gains.beta *
             (cfg_.gains.Gamma.array() * (nu - th).array()).matrix();
  } else {
    th_dot = nu_dot;  // single-stage law: theta_hat tracks nu identically
  }

  VectorXd out(6);
  out << xdot, nu_dot, th_dot;
  return out;
}

VectorXd AffineLoop::step(const VectorXd& z, double t, double dt) const {
  const OdeRhs f = [this](const VectorXd& zz, double tt) { return rhs(zz, tt); };
  return cfg_.sim.integrator == IntegratorKind::RK4 ? rk4_step(f, z, t, dt)
                                                    : euler_step(f, z, t, dt);
}

TraceRecord AffineLoop::record(const VectorXd& z, double t) const {
  TraceRecord rec;
  rec.t = t;
  rec.x = z.segment(0, 2);
  rec.nu = z.segment(2, 2);
  rec.theta_hat = z.segment(4, 2);

  const AffinePlantEval pe{plant_.f(rec.x), plant_.G(rec.x), plant_.Phi(rec.x)};
  const BarrierEval bar = barrier_.eval(rec.x);
  const AffineControlResult ctl =
      affine_safety_controller(cfg_.controller, rec.x, rec.theta_hat, pe, bar,
                               cfg_.gains, ref_, t, cfg_.k1, cfg_.k2);
  rec.u = ctl.u;
  rec.constraint_margin = ctl.margin;
  rec.h = bar.value;

  const VectorXd& theta = plant_.theta_true();
  if (cfg_.controller == ControllerKind::TRACBF) {
    rec.h_a = bar.value -
              weighted_quadratic(theta - rec.nu, cfg_.gains.Gamma) -
              weighted_quadratic(rec.nu - rec.theta_hat, cfg_.gains.Gamma);
  } else {
    rec.h_a = bar.value -
              weighted_quadratic(theta - rec.theta_hat, cfg_.gains.Gamma);
  }
  return rec;
}

RobotLoop::RobotLoop(const ScenarioConfig& cfg)
    : cfg_(cfg),
      policy_(scenario_box_barrier(cfg), scenario_trajectory(cfg), cfg.gains,
              cfg.sigma) {
  detail::require(cfg.plant == PlantKind::TWO_LINK,
                  "RobotLoop: scenario is not a two-link run");
  if (cfg_.projection.enabled) ball_ = scenario_projection_ball(cfg_);
}

VectorXd RobotLoop::initial_state() const {
  VectorXd z(10);
  z << cfg_.q0, cfg_.qdot0, cfg_.nu0, cfg_.theta_hat0;
  return z;
}

VectorXd RobotLoop::rhs(const VectorXd& z, double t) const {
  const VectorXd q = z.segment(0, 2);
  const VectorXd qdot = z.segment(2, 2);
  const VectorXd nu = z.segment(4, 3);
  const VectorXd th = z.segment(7, 3);

  const RobotControlResult ctl =
      robot_controller(policy_, q, qdot, t, th, cfg_.gains);
  const VectorXd qddot = manipulator_accel(arm_, q, qdot, ctl.u);

  EstimatorState est{nu, th};
  TunerRates rates =
      hot_update_robot(est, ctl.W, ctl.s, cfg_.gains.Gamma, cfg_.gains.beta);
  if (cfg_.projection.enabled)
    rates.nu_dot = project_rate(nu, rates.nu_dot, ball_);

  VectorXd out(10);
  out << qdot, qddot, rates.nu_dot, rates.theta_hat_dot;
  return out;
}

VectorXd RobotLoop::step(const VectorXd& z, double t, double dt) const {
  const OdeRhs f = [this](const VectorXd& zz, double tt) { return rhs(zz, tt); };
  return cfg_.sim.integrator == IntegratorKind::RK4 ? rk4_step(f, z, t, dt)
                                                    : euler_step(f, z, t, dt);
}

TraceRecord RobotLoop::record(const VectorXd& z, double t) const {
  TraceRecord rec;
  rec.t = t;
  rec.x = z.segment(0, 4);
  rec.nu = z.segment(4, 3);
  rec.theta_hat = z.segment(7, 3);

  const VectorXd q = z.segment(0, 2);
  const VectorXd qdot = z.segment(2, 2);
  const RobotControlResult ctl =
      robot_controller(policy_, q, qdot, t, rec.theta_hat, cfg_.gains);
  rec.u = ctl.u;
  rec.s = ctl.s;
  rec.constraint_margin = ctl.margin;
  rec.h = policy_.barrier().eval(q).value;

  const VectorXd& theta = arm_.theta_true();
  const double sms = ctl.s.dot(arm_.mass_matrix(q) * ctl.s);
  rec.V = 0.5 * sms +
          weighted_quadratic(theta - rec.nu, cfg_.gains.Gamma) +
          weighted_quadratic(rec.nu - rec.theta_hat, cfg_.gains.Gamma);
  rec.h_a = rec.h - rec.V / cfg_.gains.mu;  // B
  return rec;
}

namespace {

template <typename Loop>
RunResult drive(const Loop& loop, const ScenarioConfig& cfg) {
  RunResult out;
  const double dt = cfg.sim.dt;
  const long long steps = std::llround(cfg.sim.horizon / dt);
  out.trace.reserve(static_cast<size_t>(steps / cfg.sim.log_stride + 2));

  VectorXd z = loop.initial_state();
  for (long long i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    if (!state_ok(z)) {
      out.status = RunStatus::DIVERGED;
      out.message = "state left the finite range at t = " + std::to_string(t);
      break;
    }
    if (i % cfg.sim.log_stride == 0 || i == steps) {
      try {
        out.trace.push_back(loop.record(z, t));
      } catch (const std::exception& e) {
        out.status = RunStatus::DIVERGED;
        out.message = e.what();
        break;
      }
    }
    if (i == steps) break;
    try {
      z = loop.step(z, t, dt);
    } catch (const InfeasibleConstraint& e) {
      out.status = RunStatus::DIVERGED;
      out.message = e.what();
      break;
    } catch (const std::domain_error& e) {
      out.status = RunStatus::DIVERGED;
      out.message = e.what();
      break;
    }
  }

  // summary over whatever was logged (possibly a partial trace)
  RunSummary& s = out.summary;
  if (!out.trace.empty()) {
    s.min_h = s.min_aug = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < out.trace.size(); ++i) {
      const TraceRecord& r = out.trace[i];
      s.min_h = std::min(s.min_h, r.h);
      s.min_aug = std::min(s.min_aug, r.h_a);
      s.max_u_norm = std::max(s.max_u_norm, r.u.norm());
      if (i + 1 < out.trace.size()) {
        const TraceRecord& rn = out.trace[i + 1];
        s.l2_effort += 0.5 * (r.u.squaredNorm() + rn.u.squaredNorm()) *
                       (rn.t - r.t);
      }
    }
    const TraceRecord& last = out.trace.back();
    if (cfg.plant == PlantKind::TWO_LINK) {
      const VectorXd qd = scenario_trajectory(cfg).pos(last.t);
      s.final_tracking_error = (last.x.segment(0, 2) - qd).norm();
    } else {
      s.final_tracking_error =
          std::abs(last.x[0] - scenario_reference(cfg).value(last.t));
    }
  }
  return out;
}

}  // namespace

RunResult run(const ScenarioConfig& cfg) {
  if (cfg.plant == PlantKind::TWO_LINK) return drive(RobotLoop(cfg), cfg);
  return drive(AffineLoop(cfg), cfg);
}

}  // namespace tracbf
