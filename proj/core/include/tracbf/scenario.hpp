#pragma once

#include <string>

#include "tracbf/controllers.hpp"
#include "tracbf/core.hpp"
#include "tracbf/tuners.hpp"

namespace tracbf {

/// Config file or value rejected. The message carries the offending line or
/// key so CLI diagnostics stay actionable.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PlantKind { DOUBLE_INTEGRATOR, TWO_LINK };
enum class IntegratorKind { RK4, EULER };

struct SimConfig {
  double dt = 1e-3;
  double horizon = 10.0;
  IntegratorKind integrator = IntegratorKind::RK4;
  int log_stride = 1;
};

struct ProjectionConfig {
  bool enabled = false;
  VectorXd center;  // defaults to zeros of the parameter dimension
  double radius = 1.0;
  double boundary_layer = 0.1;
};

/// Everything a run needs, loadable from the flat key = value config format
/// (see README for the grammar).
struct ScenarioConfig {
  PlantKind plant = PlantKind::DOUBLE_INTEGRATOR;
  ControllerKind controller = ControllerKind::TRACBF;

  GainSet gains;

  // double-integrator barrier
  double x1max = 1.0;
  double rho = 50.0;
  double delta = 0.1;
  // joint-box barrier
  double qm = 0.523598775598298816;
  double lambda_h = 10.0;

  double sigma = 0.1;  // smooth-filter sharpness
  double k1 = 2.0, k2 = 2.0;

  VectorXd x0;          // double-integrator initial state
  VectorXd q0, qdot0;   // manipulator initial state
  VectorXd theta_hat0;
  VectorXd nu0;         // defaults to theta_hat0 when absent

  double ref_amplitude = 1.5;
  double ref_frequency = 2.0;

  SimConfig sim;
  ProjectionConfig projection;

  int param_dim() const { return static_cast<int>(theta_hat0.size()); }
};

/// Parse a config document. Throws ConfigError on syntax errors, unknown or
/// duplicate keys, and on semantically invalid values.
ScenarioConfig parse_scenario(const std::string& text);

/// Load and parse a config file. Throws ConfigError if unreadable.
ScenarioConfig load_scenario(const std::string& path);

/// Canonical text form; parse_scenario(serialize_scenario(c)) reproduces c
/// exactly (values are written with 17 significant digits).
std::string serialize_scenario(const ScenarioConfig& cfg);

/// Convenience accessors assembled from the config.
SinusoidReference scenario_reference(const ScenarioConfig& cfg);
JointSinusoidTrajectory scenario_trajectory(const ScenarioConfig& cfg);
DoubleIntegratorBarrier scenario_di_barrier(const ScenarioConfig& cfg);
SoftminBoxBarrier scenario_box_barrier(const ScenarioConfig& cfg);
ProjectionBall scenario_projection_ball(const ScenarioConfig& cfg);

}  // namespace tracbf
