#pragma once

#include <optional>

#include "tracbf/core.hpp"

namespace tracbf {

/// Smooth projection region for the gradient stage: rates pointing out of the
/// ball ||nu - center|| <= radius are blended to tangential across a boundary
/// layer, guaranteeing ||nu - center|| <= radius * sqrt(1 + boundary_layer).
struct ProjectionBall {
  VectorXd center;
  double radius = 1.0;
  double boundary_layer = 0.1;
};

/// Plain certainty-equivalence rate: nu_dot = -Gamma * psi.
VectorXd gradient_update(const VectorXd& psi, const VectorXd& gamma_diag);

/// High-order tuner rates for affine plants:
///   nu_dot        = -Gamma * psi            (gradient stage)
///   theta_hat_dot = beta * Gamma * (nu - theta_hat)   (low-pass stage)
struct TunerRates {
  VectorXd nu_dot;
  VectorXd theta_hat_dot;
};

TunerRates hot_update(const EstimatorState& est, const VectorXd& psi,
                      const VectorXd& gamma_diag, double beta);

/// Manipulator form of the gradient stage: nu_dot = -Gamma * W^T * s, with the
/// same low-pass stage for theta_hat.
TunerRates hot_update_robot(const EstimatorState& est, const MatrixXd& W,
                            const VectorXd& s, const VectorXd& gamma_diag,
                            double beta);

/// Smooth rate projection. With p(nu) = (||nu-c||^2 - r^2) / (layer * r^2):
/// returns nu_dot unchanged when p <= 0 or the rate points inward, otherwise
/// removes min(1, p) of the radial component.
VectorXd project_rate(const VectorXd& nu, const VectorXd& nu_dot,
                      const ProjectionBall& ball);

}  // namespace tracbf
