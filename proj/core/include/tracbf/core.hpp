#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tracbf {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Dense dimensions stay tiny in every supported scenario; the cap keeps
// accidental misconfiguration (e.g. a trace column pasted into a gain vector)
// from silently producing huge states.
inline constexpr int kMaxStateDim = 8;
inline constexpr int kMaxParamDim = 8;

/// Physical plant state at time t.
struct PlantState {
  VectorXd x;  // for manipulators this is [q; qdot]
  double t = 0.0;
};

/// Estimator pair used by the high-order tuner. nu is the gradient stage,
/// theta_hat the low-pass stage. Single-stage update laws keep the two equal.
struct EstimatorState {
  VectorXd nu;
  VectorXd theta_hat;
};

struct AugmentedState {
  PlantState plant;
  EstimatorState estimator;
};

/// Scenario gains. Gamma, K and Lambda are diagonal, stored as their
/// diagonals: every supported scenario uses scalar multiples of identity and
/// the certificates only ever need the smallest eigenvalue.
struct GainSet {
  VectorXd Gamma;          // adaptation gain diagonal, entries > 0
  double beta = 0.0;       // tuner filter bandwidth (> 0 where the law uses it)
  double alpha = 0.0;      // linear class-K slope, > 0
  VectorXd K;              // tracking gain diagonal (manipulator runs)
  VectorXd Lambda;         // reference slope diagonal (manipulator runs)
  double mu = 0.0;         // barrier/Lyapunov trade-off, > 0 (manipulator runs)
  double epsilon = 0.0;    // reference-velocity relaxation, > 0 (manipulator runs)
  double theta_tilde_bound = 0.0;  // assumed bound on the parameter error norm
};

/// One logged integration step.
struct TraceRecord {
  double t = 0.0;
  VectorXd x;          // plant coordinates as logged ([q; qdot] for robots)
  VectorXd u;
  VectorXd nu;
  VectorXd theta_hat;
  double h = 0.0;
  double h_a = 0.0;        // augmented barrier (affine runs) or B (robot runs)
  double V = 0.0;          // robot runs only
  VectorXd s;              // robot runs only
  double constraint_margin = 0.0;  // a.dot(u) - b at the applied input
};

/// 0.5 * sum_i v_i^2 / Gamma_ii, the Gamma^{-1}-weighted quadratic that all
/// augmented barriers and start conditions share.
double weighted_quadratic(const VectorXd& v, const VectorXd& gamma_diag);

/// Smallest entry of a positive diagonal. Throws std::invalid_argument on an
/// empty or non-positive diagonal.
double min_eigen_diag(const VectorXd& diag);

namespace detail {
void require(bool ok, const char* what);
}

}  // namespace tracbf
