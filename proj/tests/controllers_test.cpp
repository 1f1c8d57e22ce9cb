#include "tracbf/controllers.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tracbf/plants.hpp"
#include "tracbf/sim_engine.hpp"

namespace tracbf {
namespace {

constexpr double kPi = 3.14159265358979323846;

VectorXd vec2(double a, double b) {
  VectorXd v(2);
  v << a, b;
  return v;
}

GainSet di_gains() {
  GainSet g;
  g.Gamma = vec2(250.0, 250.0);
  g.alpha = 2.5;
  g.beta = 0.05;
  g.theta_tilde_bound = 14.14;
  return g;
}

GainSet robot_gains() {
  GainSet g;
  g.Gamma = VectorXd::Constant(3, 150.0);
  g.alpha = 10.0;
  g.beta = 0.25;
  g.theta_tilde_bound = 8.66;
  g.K = vec2(50.0, 50.0);
  g.Lambda = vec2(0.25, 0.25);
  g.mu = 10.0;
  g.epsilon = 10.0;
  return g;
}

TEST(BacksteppingNominal, RestAtOriginIsZero) {
  EXPECT_EQ(backstepping_nominal(vec2(0.0, 0.0), vec2(0.0, 0.0), 0.0, 0.0, 0.0),
            0.0);
}

TEST(BacksteppingNominal, ExactModelTracksWithoutError) {
  DoubleIntegratorPlant plant;
  SinusoidReference ref{1.5, 2.0};
  OdeRhs rhs = [&](const VectorXd& x, double t) {
    const double u =
        backstepping_nominal(x, plant.theta_true(), ref.value(t), ref.rate(t),
                             ref.accel(t));
    return VectorXd(plant.f(x) + plant.G(x) * (VectorXd::Constant(1, u) +
                                               plant.Phi(x) * plant.theta_true()));
  };
  // start on the virtual-control manifold: e1 = 0, e2 = 0
  VectorXd x = vec2(ref.value(0.0), ref.rate(0.0));
  const double dt = 1e-3;
  double t = 0.0;
  for (int i = 0; i < 1000; ++i, t += dt) {
    x = rk4_step(rhs, x, t, dt);
    EXPECT_NEAR(x[0], ref.value(t + dt), 1e-8);
  }
}

TEST(BacksteppingNominal, DefaultGainsGiveHurwitzErrorDynamics) {
  // e1_dot = -k1 e1 + e2, e2_dot = -e1 - k2 e2 under exact parameters
  MatrixXd A(2, 2);
  A << -2.0, 1.0, -1.0, -2.0;
  const Eigen::EigenSolver<MatrixXd> es(A);
  EXPECT_LT(es.eigenvalues()[0].real(), 0.0);
  EXPECT_LT(es.eigenvalues()[1].real(), 0.0);
}

AffinePlantEval eval_plant(const DoubleIntegratorPlant& plant,
                           const VectorXd& x) {
  return AffinePlantEval{plant.f(x), plant.G(x), plant.Phi(x)};
}

TEST(AffineSafetyController, DeepInteriorKindsCoincideWithNominal) {
  DoubleIntegratorPlant plant;
  DoubleIntegratorBarrier bar{1.0, 50.0, 0.1};
  SinusoidReference ref{1.5, 2.0};
  const GainSet gains = di_gains();
  // at the origin dh/dx G = 0 and psi = 0: all constraints are vacuous
  const VectorXd x = vec2(0.0, 0.0);
  const VectorXd theta_hat = vec2(3.0, -1.0);
  const double nominal = backstepping_nominal(
      x, theta_hat, ref.value(0.3), ref.rate(0.3), ref.accel(0.3));
  for (ControllerKind kind :
       {ControllerKind::ACBF, ControllerKind::RACBF, ControllerKind::TRACBF}) {
    const AffineControlResult res = affine_safety_controller(
        kind, x, theta_hat, eval_plant(plant, x), bar.eval(x), gains, ref, 0.3);
    EXPECT_NEAR(res.u[0], nominal, 1e-12);
  }
}

TEST(AffineSafetyController, TunerMarginSeparatesActiveFilters) {
  DoubleIntegratorPlant plant;
  DoubleIntegratorBarrier bar{1.0, 50.0, 0.1};
  SinusoidReference ref{1.5, 2.0};
  const GainSet gains = di_gains();
  const VectorXd x = vec2(0.9, 0.8);
  const VectorXd theta_hat = vec2(0.0, 0.0);
  const BarrierEval be = bar.eval(x);
  const AffineControlResult rr = affine_safety_controller(
      ControllerKind::RACBF, x, theta_hat, eval_plant(plant, x), be, gains,
      ref, 0.0, 8.0, 8.0);
  const AffineControlResult rt = affine_safety_controller(
      ControllerKind::TRACBF, x, theta_hat, eval_plant(plant, x), be, gains,
      ref, 0.0, 8.0, 8.0);
  // both constraints are active here: the applied inputs sit on them
  EXPECT_NEAR(rr.margin, 0.0, 1e-9);
  EXPECT_NEAR(rt.margin, 0.0, 1e-9);
  const VectorXd psi = barrier_regressor(be, plant.G(x), plant.Phi(x));
  const VectorXd a = rt.constraint.a;
  const VectorXd expected_gap =
      (2.0 / gains.beta) * psi.squaredNorm() / a.squaredNorm() * a;
  EXPECT_NEAR((rt.u - rr.u - expected_gap).norm(), 0.0, 1e-9);
}

TEST(AffineSafetyController, AppliedInputSatisfiesItsConstraint) {
  DoubleIntegratorPlant plant;
  DoubleIntegratorBarrier bar{1.0, 50.0, 0.1};
  SinusoidReference ref{1.5, 2.0};
  const GainSet gains = di_gains();
  std::mt19937 gen(21);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const VectorXd x = vec2(dist(gen), dist(gen));
    const VectorXd theta_hat = vec2(5.0 * dist(gen), 5.0 * dist(gen));
    for (ControllerKind kind : {ControllerKind::ACBF, ControllerKind::RACBF,
                                ControllerKind::TRACBF}) {
      try {
        const AffineControlResult res =
            affine_safety_controller(kind, x, theta_hat, eval_plant(plant, x),
                                     bar.eval(x), gains, ref, dist(gen));
        EXPECT_GE(res.margin, -1e-10);
      } catch (const InfeasibleConstraint&) {
        // a = 0 with b > 0 is legitimately infeasible at states outside C
      }
    }
  }
}

TEST(SlotineLiHot, ManifoldAndZeroRegressorLimits) {
  const VectorXd theta_hat = VectorXd::Constant(3, 0.7);
  const MatrixXd W = MatrixXd::Random(2, 3);
  const VectorXd k = vec2(50.0, 50.0);
  const VectorXd on_manifold =
      slotine_li_hot(VectorXd::Zero(2), W, theta_hat, k, 0.25);
  EXPECT_NEAR((on_manifold - W * theta_hat).norm(), 0.0, 1e-15);
  const VectorXd s = vec2(0.3, -0.2);
  const VectorXd no_regressor =
      slotine_li_hot(s, MatrixXd::Zero(2, 3), theta_hat, k, 0.25);
  EXPECT_NEAR((no_regressor + 50.0 * s).norm(), 0.0, 1e-15);
}

TEST(SlotineLiHot, DampingTermAtUnitRegressor) {
  // W = [I2 0], s = e1: u = -K s + theta_hat[0:2] - (2/beta) W W^T s
  MatrixXd W = MatrixXd::Zero(2, 3);
  W(0, 0) = 1.0;
  W(1, 1) = 1.0;
  VectorXd theta_hat(3);
  theta_hat << 1.0, 2.0, 3.0;
  VectorXd s(2);
  s << 1.0, 0.0;
  const VectorXd u = slotine_li_hot(s, W, theta_hat, vec2(50.0, 50.0), 0.25);
  EXPECT_NEAR(u[0], -50.0 + 1.0 - 8.0, 1e-12);
  EXPECT_NEAR(u[1], 2.0, 1e-12);
}

TEST(SlotineLiHot, LinearInSlidingVariableAndEstimate) {
  std::mt19937 gen(25);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const MatrixXd W = MatrixXd::Random(2, 3);
  const VectorXd k = vec2(50.0, 50.0);
  for (int i = 0; i < 50; ++i) {
    const VectorXd s1 = vec2(dist(gen), dist(gen));
    const VectorXd s2 = vec2(dist(gen), dist(gen));
    VectorXd t1(3), t2(3);
    t1 << dist(gen), dist(gen), dist(gen);
    t2 << dist(gen), dist(gen), dist(gen);
    const VectorXd sum = slotine_li_hot(s1 + s2, W, t1 + t2, k, 0.25);
    const VectorXd parts = slotine_li_hot(s1, W, t1, k, 0.25) +
                           slotine_li_hot(s2, W, t2, k, 0.25);
    EXPECT_NEAR((sum - parts).norm(), 0.0, 1e-12);
  }
}

TEST(DesiredReference, OnTrajectoryAndStaticTarget) {
  JointSinusoidTrajectory traj{kPi / 4.0, 2.0, 2};
  const VectorXd lam = vec2(0.25, 0.25);
  const double t = 0.8;
  EXPECT_NEAR(
      (desired_reference_rd(traj.pos(t), t, traj, lam) - traj.vel(t)).norm(),
      0.0, 1e-15);
  JointSinusoidTrajectory still{0.0, 2.0, 2};
  const VectorXd rd = desired_reference_rd(vec2(0.4, 0.0), 0.0, still, lam);
  EXPECT_NEAR(rd[0], -0.1, 1e-15);
  EXPECT_NEAR(rd[1], 0.0, 1e-15);
}

TEST(DesiredReference, FollowingItContractsTrackingError) {
  JointSinusoidTrajectory traj{kPi / 4.0, 2.0, 2};
  const VectorXd lam = vec2(0.25, 0.25);
  OdeRhs rhs = [&](const VectorXd& q, double t) {
    return desired_reference_rd(q, t, traj, lam);
  };
  VectorXd q = traj.pos(0.0) + vec2(1.0, 1.0);
  const double dt = 1e-3;
  double t = 0.0;
  for (int i = 0; i < 4000; ++i, t += dt) q = rk4_step(rhs, q, t, dt);
  // e_dot = -Lambda e exactly, so e(4) = e^{-1} e(0)
  EXPECT_NEAR((q - traj.pos(t)).norm(),
              std::exp(-0.25 * t) * std::sqrt(2.0), 1e-6);
}

TEST(RobotController, OracleEstimateKeepsCertificateNonnegative) {
  // theta_hat frozen at the true parameters, started on the sliding manifold:
  // B = h - s'Ms/(2 mu) must stay nonnegative under condition lambda_min(K)
  // >= max(eps*mu/2, alpha*Mbar)
  TwoLinkArm arm;
  const GainSet gains = robot_gains();
  SoftminBoxBarrier bar{kPi / 6.0, 10.0};
  JointSinusoidTrajectory traj{kPi / 4.0, 2.0, 2};
  RobotReferencePolicy policy(bar, traj, gains, 0.1);
  OdeRhs rhs = [&](const VectorXd& z, double t) {
    const VectorXd q = z.head(2), qdot = z.tail(2);
    const RobotControlResult rc =
        robot_controller(policy, q, qdot, t, arm.theta_true(), gains);
    VectorXd out(4);
    out.head(2) = qdot;
    out.tail(2) = manipulator_accel(arm, q, qdot, rc.u);
    return out;
  };
  VectorXd z(4);
  z.head(2) = vec2(0.0, 0.0);
  z.tail(2) = policy.velocity(vec2(0.0, 0.0), 0.0);  // s(0) = 0
  const double dt = 2e-5;
  double t = 0.0;
  for (int i = 0; i < 50000; ++i, t += dt) {
    z = rk4_step(rhs, z, t, dt);
    const VectorXd q = z.head(2), qdot = z.tail(2);
    const VectorXd s = qdot - policy.velocity(q, t + dt);
    const double B = bar.eval(q).value -
                     0.5 * s.dot(arm.mass_matrix(q) * s) / gains.mu;
    ASSERT_GE(B, -1e-8);
  }
  EXPECT_GT(t, 0.99);
}

TEST(RobotController, ResultFieldsAreConsistent) {
  TwoLinkArm arm;
  const GainSet gains = robot_gains();
  RobotReferencePolicy policy(SoftminBoxBarrier{kPi / 6.0, 10.0},
                              JointSinusoidTrajectory{kPi / 4.0, 2.0, 2},
                              gains, 0.1);
  const VectorXd q = vec2(0.2, -0.1);
  const VectorXd qdot = vec2(0.5, 0.3);
  const VectorXd theta_hat = VectorXd::Constant(3, 0.5);
  const RobotControlResult rc =
      robot_controller(policy, q, qdot, 0.7, theta_hat, gains);
  EXPECT_NEAR((rc.r - policy.velocity(q, 0.7)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((rc.s - (qdot - rc.r)).norm(), 0.0, 1e-15);
  const VectorXd expected_u =
      slotine_li_hot(rc.s, rc.W, theta_hat, gains.K, gains.beta);
  EXPECT_NEAR((rc.u - expected_u).norm(), 0.0, 1e-12);
}

}  // namespace
}  // namespace tracbf
