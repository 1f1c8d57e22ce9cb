#include "tracbf/tuners.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tracbf/sim_engine.hpp"

namespace tracbf {
namespace {

VectorXd vec2(double a, double b) {
  VectorXd v(2);
  v << a, b;
  return v;
}

TEST(GradientUpdate, ZeroRegressorFreezesEstimate) {
  const VectorXd rate =
      gradient_update(vec2(0.0, 0.0), vec2(250.0, 250.0));
  EXPECT_EQ(rate[0], 0.0);
  EXPECT_EQ(rate[1], 0.0);
}

TEST(GradientUpdate, HandEvaluatedDoubleIntegratorPoint) {
  // psi at x = (0.75, 0): barrier row times G times Phi
  const VectorXd rate =
      gradient_update(vec2(-0.00225, 0.0), vec2(250.0, 250.0));
  EXPECT_NEAR(rate[0], 0.5625, 1e-15);
  EXPECT_NEAR(rate[1], 0.0, 1e-15);
}

TEST(GradientUpdate, LinearInGain) {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const VectorXd psi = vec2(dist(gen), dist(gen));
    const VectorXd g = vec2(dist(gen) + 2.0, dist(gen) + 2.0);
    const VectorXd once = gradient_update(psi, g);
    const VectorXd twice = gradient_update(psi, 2.0 * g);
    EXPECT_NEAR((twice - 2.0 * once).norm(), 0.0, 1e-15);
  }
}

TEST(HotUpdate, FilterEquilibrium) {
  EstimatorState est{vec2(1.0, -2.0), vec2(1.0, -2.0)};
  const TunerRates r = hot_update(est, vec2(0.3, 0.4), vec2(10.0, 10.0), 0.5);
  EXPECT_EQ(r.theta_hat_dot[0], 0.0);
  EXPECT_EQ(r.theta_hat_dot[1], 0.0);
  EXPECT_NEAR(r.nu_dot[0], -3.0, 1e-15);
}

TEST(HotUpdate, LowPassMatchesExponentialClosedForm) {
  // psi = 0, nu constant: theta_hat(t) = nu + (theta_hat0 - nu) e^{-beta Gamma t}
  const double beta = 0.5, gamma = 10.0, nu0 = 2.0, th0 = -1.0;
  OdeRhs rhs = [&](const VectorXd& z, double) {
    EstimatorState est{z.head(1), z.tail(1)};
    const TunerRates r =
        hot_update(est, VectorXd::Zero(1), VectorXd::Constant(1, gamma), beta);
    VectorXd out(2);
    out << r.nu_dot[0], r.theta_hat_dot[0];
    return out;
  };
  VectorXd z(2);
  z << nu0, th0;
  const double dt = 1e-3;
  double t = 0.0;
  for (int i = 0; i < 1000; ++i, t += dt) z = rk4_step(rhs, z, t, dt);
  const double expected = nu0 + (th0 - nu0) * std::exp(-beta * gamma * t);
  EXPECT_EQ(z[0], nu0);
  EXPECT_NEAR(z[1], expected, 1e-12);
}

TEST(HotUpdate, StiffBandwidthTracksGradientStage) {
  // constant psi: nu ramps at -psi, theta_hat lags by psi/beta in steady state
  const double beta = 1e4, gamma = 1.0, psi = 0.8;
  OdeRhs rhs = [&](const VectorXd& z, double) {
    EstimatorState est{z.head(1), z.tail(1)};
    const TunerRates r = hot_update(est, VectorXd::Constant(1, psi),
                                    VectorXd::Constant(1, gamma), beta);
    VectorXd out(2);
    out << r.nu_dot[0], r.theta_hat_dot[0];
    return out;
  };
  VectorXd z = VectorXd::Zero(2);
  const double dt = 1e-7;
  double t = 0.0;
  for (int i = 0; i < 20000; ++i, t += dt) z = rk4_step(rhs, z, t, dt);
  const double gap = z[0] - z[1];
  EXPECT_NEAR(gap, -psi / beta, 0.02 * psi / beta);
}

TEST(HotUpdateRobot, MatchesGradientUpdateOnStackedRegressor) {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    MatrixXd W(2, 3);
    for (int i = 0; i < 6; ++i) W(i / 3, i % 3) = dist(gen);
    const VectorXd s = vec2(dist(gen), dist(gen));
    VectorXd gamma(3);
    gamma << 2.0 + dist(gen), 2.0 + dist(gen), 2.0 + dist(gen);
    EstimatorState est{VectorXd::Zero(3), VectorXd::Zero(3)};
    const TunerRates a = hot_update_robot(est, W, s, gamma, 0.25);
    const TunerRates b = hot_update(est, W.transpose() * s, gamma, 0.25);
    EXPECT_NEAR((a.nu_dot - b.nu_dot).norm(), 0.0, 1e-15);
    EXPECT_NEAR((a.theta_hat_dot - b.theta_hat_dot).norm(), 0.0, 1e-15);
  }
}

TEST(HotUpdateRobot, ManifoldFreezesGradientStage) {
  EstimatorState est{VectorXd::Zero(3), VectorXd::Zero(3)};
  const TunerRates r = hot_update_robot(est, MatrixXd::Random(2, 3),
                                        VectorXd::Zero(2),
                                        VectorXd::Constant(3, 150.0), 0.25);
  EXPECT_EQ(r.nu_dot.norm(), 0.0);
}

ProjectionBall ball2(double radius, double layer) {
  return ProjectionBall{VectorXd::Zero(2), radius, layer};
}

TEST(ProjectRate, IdentityInsideBall) {
  const VectorXd nu = vec2(0.3, 0.4);
  const VectorXd rate = vec2(5.0, -2.0);
  EXPECT_EQ(project_rate(nu, rate, ball2(1.0, 0.1)), rate);
}

TEST(ProjectRate, IdentityWhenPointingInward) {
  const VectorXd nu = vec2(1.04, 0.0);  // outside r but rate points inward
  const VectorXd rate = vec2(-3.0, 1.0);
  EXPECT_EQ(project_rate(nu, rate, ball2(1.0, 0.1)), rate);
}

TEST(ProjectRate, OuterBoundaryRemovesRadialComponent) {
  const double r = 1.0, layer = 0.1;
  const VectorXd nu = vec2(r * std::sqrt(1.0 + layer), 0.0);  // p(nu) = 1
  const VectorXd rate = vec2(2.0, 0.7);
  const VectorXd out = project_rate(nu, rate, ball2(r, layer));
  EXPECT_NEAR(out.dot(nu), 0.0, 1e-12);
  EXPECT_NEAR(out[1], 0.7, 1e-12);
}

TEST(ProjectRate, NeverIncreasesRadialVelocity) {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const ProjectionBall ball = ball2(1.0, 0.1);
  for (int k = 0; k < 500; ++k) {
    const VectorXd nu = vec2(dist(gen), dist(gen));
    const VectorXd rate = vec2(dist(gen), dist(gen));
    const VectorXd out = project_rate(nu, rate, ball);
    EXPECT_LE(nu.dot(out), nu.dot(rate) + 1e-12);
    if (nu.norm() <= ball.radius) EXPECT_EQ(out, rate);
  }
}

TEST(ProjectRate, IntegrationStaysInInflatedBall) {
  // constant outward pull; the projected flow must stall inside the layer
  const double r = 1.0, layer = 0.1;
  const ProjectionBall ball = ball2(r, layer);
  OdeRhs rhs = [&](const VectorXd& z, double) {
    return project_rate(z, vec2(3.0, 1.5), ball);
  };
  VectorXd z = vec2(0.1, -0.2);
  double t = 0.0;
  const double dt = 1e-3;
  for (int i = 0; i < 5000; ++i, t += dt) {
    z = rk4_step(rhs, z, t, dt);
    EXPECT_LE(z.norm(), r * std::sqrt(1.0 + layer) + 1e-6);
  }
  EXPECT_GT(z.norm(), r);  // it does enter the boundary layer
}

}  // namespace
}  // namespace tracbf
