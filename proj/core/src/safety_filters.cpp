#include "tracbf/safety_filters.hpp"

#include <cmath>

namespace tracbf {

namespace {

// below this slack depth (in sigma units) the correction is exactly zero,
// so u == kd on a neighborhood of every interior critical point of h and
// the lambda / ||a||^2 direction term stays bounded as ||a|| -> 0
constexpr double kGainCutoff = -15.0;
// exact softplus above this depth; cubic blend keeps the gain C1 between
constexpr double kGainBlend = -10.0;

// softplus(z) scaled by sigma, computed on the stable branch so large
// violations do not overflow exp
double softplus_gain(double violation, double sigma) {
  const double z = violation / sigma;
  if (z > 0.0) return sigma * (z + std::log1p(std::exp(-z)));
  if (z <= kGainCutoff) return 0.0;
  double gain = sigma * std::log1p(std::exp(z));
  if (z < kGainBlend) {
    const double w = (z - kGainCutoff) / (kGainBlend - kGainCutoff);
    gain *= w * w * (3.0 - 2.0 * w);
  }
  return gain;
}

double worst_case_error_quadratic(const GainSet& gains) {
  const double bound = gains.theta_tilde_bound;
  detail::require(bound >= 0.0, "theta_tilde_bound must be non-negative");
  return 0.5 * bound * bound / min_eigen_diag(gains.Gamma);
}

}  // namespace

VectorXd qp_filter(const VectorXd& u_des, const HalfSpaceConstraint& c) {
  detail::require(c.a.size() == u_des.size(), "qp_filter: dimension mismatch");
  const double aa = c.a.squaredNorm();
  if (aa == 0.0) {
    if (c.b > 0.0) throw InfeasibleConstraint("qp_filter: 0 >= b with b > 0");
    return u_des;
  }
  const double violation = c.b - c.a.dot(u_des);
  if (violation <= 0.0) return u_des;
  return u_des + (violation / aa) * c.a;
}

VectorXd smooth_filter(const VectorXd& u_des, const HalfSpaceConstraint& c,
                       double sigma) {
  detail::require(c.a.size() == u_des.size(),
                  "smooth_filter: dimension mismatch");
  detail::require(sigma > 0.0, "smooth_filter: sigma must be positive");
  const double aa = c.a.squaredNorm();
  detail::require(aa > 0.0, "smooth_filter: constraint normal must be nonzero");
  const double lambda = softplus_gain(c.b - c.a.dot(u_des), sigma);
  return u_des + (lambda / aa) * c.a;
}

VectorXd barrier_regressor(const BarrierEval& bar, const MatrixXd& G,
                           const MatrixXd& Phi) {
  detail::require(bar.grad.size() == G.rows(),
                  "barrier_regressor: grad/G mismatch");
  detail::require(G.cols() == Phi.rows(), "barrier_regressor: G/Phi mismatch");
  return Phi.transpose() * (G.transpose() * bar.grad);
}

namespace {

HalfSpaceConstraint adaptive_constraint(const BarrierEval& bar,
                                        const VectorXd& f, const MatrixXd& G,
                                        const MatrixXd& Phi,
                                        const VectorXd& theta_hat,
                                        const GainSet& gains, bool robust,
                                        bool tunable) {
  HalfSpaceConstraint c;
  c.a = G.transpose() * bar.grad;
  c.b = -bar.grad.dot(f) - c.a.dot(Phi * theta_hat);
  if (robust) {
    const double w = worst_case_error_quadratic(gains);
    c.b -= classk_apply(gains.alpha, bar.value - w);
  }
  if (tunable) {
    detail::require(gains.beta > 0.0, "tracbf constraint: beta must be positive");
    const VectorXd psi = barrier_regressor(bar, G, Phi);
    c.b += (2.0 / gains.beta) * psi.squaredNorm();
  }
  return c;
}

}  // namespace

HalfSpaceConstraint build_acbf_constraint(const BarrierEval& bar,
                                          const VectorXd& f, const MatrixXd& G,
                                          const MatrixXd& Phi,
                                          const VectorXd& theta_hat,
                                          const GainSet& gains) {
  return adaptive_constraint(bar, f, G, Phi, theta_hat, gains, false, false);
}

HalfSpaceConstraint build_racbf_constraint(const BarrierEval& bar,
                                           const VectorXd& f, const MatrixXd& G,
                                           const MatrixXd& Phi,
                                           const VectorXd& theta_hat,
                                           const GainSet& gains) {
  return adaptive_constraint(bar, f, G, Phi, theta_hat, gains, true, false);
}

HalfSpaceConstraint build_tracbf_constraint(const BarrierEval& bar,
                                            const VectorXd& f, const MatrixXd& G,
                                            const MatrixXd& Phi,
                                            const VectorXd& theta_hat,
                                            const GainSet& gains) {
  return adaptive_constraint(bar, f, G, Phi, theta_hat, gains, true, true);
}

HalfSpaceConstraint build_reference_constraint(const BarrierEval& bar,
                                               const GainSet& gains) {
  detail::require(gains.mu > 0.0,
                  "build_reference_constraint: mu must be positive");
  detail::require(gains.epsilon > 0.0,
                  "build_reference_constraint: epsilon must be positive");
  HalfSpaceConstraint c;
  c.a = bar.grad;
  const double w = worst_case_error_quadratic(gains) / gains.mu;
  c.b = -classk_apply(gains.alpha, bar.value - w) +
        bar.grad.squaredNorm() / gains.epsilon;
  return c;
}

VectorXd safe_reference_velocity(const BarrierEval& bar, const VectorXd& r_des,
                                 const GainSet& gains, double sigma) {
  const HalfSpaceConstraint c = build_reference_constraint(bar, gains);
  if (c.a.squaredNorm() == 0.0) {
    if (c.b > 0.0)
      throw InfeasibleConstraint(
          "safe_reference_velocity: critical point of h with positive bound");
    return r_des;
  }
  return smooth_filter(r_des, c, sigma);
}

VectorXd reference_velocity_rate(const ReferenceVelocityFn& r,
                                 const VectorXd& q, const VectorXd& qdot,
                                 double t, double delta) {
  detail::require(delta > 0.0, "reference_velocity_rate: delta must be positive");
  const VectorXd plus = r(q + delta * qdot, t + delta);
  const VectorXd minus = r(q - delta * qdot, t - delta);
  return (plus - minus) / (2.0 * delta);
}

}  // namespace tracbf
