#include "tracbf/scenario.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tracbf {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& v, const std::string& key) {
  size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has non-numeric value '" + v +
                      "'");
  }
  if (trim(v.substr(pos)).size() != 0)
    throw ConfigError("config: key '" + key + "' has trailing junk in '" + v +
                      "'");
  return out;
}

// raw key/value table with duplicate detection and consumption tracking
class KeyTable {
 public:
  explicit KeyTable(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": expected 'key = value', got '" + line + "'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty key");
      if (entries_.count(key))
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": duplicate key '" + key + "'");
      entries_[key] = value;
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string string_value(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end())
      throw ConfigError("config: missing required key '" + key + "'");
    consumed_.insert(key);
    return it->second;
  }

  double number(const std::string& key) {
    return parse_double(string_value(key), key);
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key) {
    const double v = number(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw ConfigError("config: key '" + key + "' must be an integer");
    return i;
  }

  bool boolean(const std::string& key) {
    const std::string v = string_value(key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("config: key '" + key + "' must be true or false");
  }

  VectorXd vector(const std::string& key) {
    const std::string v = string_value(key);
    std::vector<double> vals;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty())
        throw ConfigError("config: key '" + key + "' has an empty component");
      vals.push_back(parse_double(item, key));
    }
    if (vals.empty())
      throw ConfigError("config: key '" + key + "' has no components");
    VectorXd out(static_cast<Eigen::Index>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i)
      out[static_cast<Eigen::Index>(i)] = vals[i];
    return out;
  }

  void reject_unconsumed() const {
    for (const auto& [key, value] : entries_)
      if (!consumed_.count(key))
        throw ConfigError("config: unknown key '" + key + "'");
  }

 private:
  std::map<std::string, std::string> entries_;
  std::set<std::string> consumed_;
};

PlantKind parse_plant(const std::string& v) {
  if (v == "double_integrator") return PlantKind::DOUBLE_INTEGRATOR;
  if (v == "two_link") return PlantKind::TWO_LINK;
  throw ConfigError("config: unknown plant '" + v + "'");
}

ControllerKind parse_controller(const std::string& v) {
  if (v == "acbf") return ControllerKind::ACBF;
  if (v == "racbf") return ControllerKind::RACBF;
  if (v == "tracbf") return ControllerKind::TRACBF;
  if (v == "slotine_li_hot") return ControllerKind::SLOTINE_LI_HOT;
  throw ConfigError("config: unknown controller '" + v + "'");
}

IntegratorKind parse_integrator(const std::string& v) {
  if (v == "rk4") return IntegratorKind::RK4;
  if (v == "euler") return IntegratorKind::EULER;
  throw ConfigError("config: unknown integrator '" + v + "'");
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw ConfigError(std::string("config: ") + what +
                                    " must be positive");
}

void check_vector(const VectorXd& v, Eigen::Index n, bool positive,
                  const char* what) {
  if (v.size() != n)
    throw ConfigError(std::string("config: ") + what + " must have " +
                      std::to_string(n) + " components");
  if (positive)
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (!(v[i] > 0.0))
        throw ConfigError(std::string("config: ") + what +
                          " entries must be positive");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  KeyTable kt(text);
  ScenarioConfig c;

  c.plant = parse_plant(kt.string_value("plant"));
  c.controller = parse_controller(kt.string_value("controller"));

  const bool robot = c.plant == PlantKind::TWO_LINK;
  if (robot && c.controller != ControllerKind::SLOTINE_LI_HOT)
    throw ConfigError("config: two_link requires controller = slotine_li_hot");
  if (!robot && c.controller == ControllerKind::SLOTINE_LI_HOT)
    throw ConfigError(
        "config: slotine_li_hot requires plant = two_link");

  const Eigen::Index p = robot ? 3 : 2;
  const Eigen::Index n = 2;
  static_assert(2 <= kMaxStateDim && 3 <= kMaxParamDim);

  c.gains.Gamma = kt.vector("gains.gamma");
  check_vector(c.gains.Gamma, p, true, "gains.gamma");

  const bool needs_alpha = c.controller != ControllerKind::ACBF;
  if (needs_alpha) {
    c.gains.alpha = kt.number("gains.alpha");
    check_positive(c.gains.alpha, "gains.alpha");
  } else {
    c.gains.alpha = kt.number_or("gains.alpha", 0.0);
  }

  const bool needs_beta = c.controller == ControllerKind::TRACBF ||
                          c.controller == ControllerKind::SLOTINE_LI_HOT;
  if (needs_beta) {
    c.gains.beta = kt.number("gains.beta");
    check_positive(c.gains.beta, "gains.beta");
  } else {
    c.gains.beta = kt.number_or("gains.beta", 0.0);
  }

  const bool needs_bound = c.controller != ControllerKind::ACBF;
  if (needs_bound) {
    c.gains.theta_tilde_bound = kt.number("gains.theta_tilde_bound");
    if (c.gains.theta_tilde_bound < 0.0)
      throw ConfigError("config: gains.theta_tilde_bound must be >= 0");
  } else {
    c.gains.theta_tilde_bound = kt.number_or("gains.theta_tilde_bound", 0.0);
  }

  if (robot) {
    c.gains.K = kt.vector("gains.k");
    check_vector(c.gains.K, n, true, "gains.k");
    c.gains.Lambda = kt.vector("gains.lambda");
    check_vector(c.gains.Lambda, n, true, "gains.lambda");
    c.gains.mu = kt.number("gains.mu");
    check_positive(c.gains.mu, "gains.mu");
    c.gains.epsilon = kt.number("gains.epsilon");
    check_positive(c.gains.epsilon, "gains.epsilon");

    c.qm = kt.number("barrier.qm");
    check_positive(c.qm, "barrier.qm");
    c.lambda_h = kt.number("barrier.lambda_h");
    check_positive(c.lambda_h, "barrier.lambda_h");
    c.sigma = kt.number_or("filter.sigma", 0.1);
    check_positive(c.sigma, "filter.sigma");

    c.q0 = kt.vector("init.q0");
    check_vector(c.q0, n, false, "init.q0");
    c.qdot0 = kt.vector("init.qdot0");
    check_vector(c.qdot0, n, false, "init.qdot0");
  } else {
    c.x1max = kt.number("barrier.x1max");
    check_positive(c.x1max, "barrier.x1max");
    c.rho = kt.number("barrier.rho");
    check_positive(c.rho, "barrier.rho");
    c.delta = kt.number("barrier.delta");
    if (c.delta < 0.0) throw ConfigError("config: barrier.delta must be >= 0");

    c.k1 = kt.number_or("nominal.k1", 2.0);
    c.k2 = kt.number_or("nominal.k2", 2.0);
    check_positive(c.k1, "nominal.k1");
    check_positive(c.k2, "nominal.k2");

    c.x0 = kt.vector("init.x0");
    check_vector(c.x0, n, false, "init.x0");
  }

  c.theta_hat0 = kt.vector("init.theta_hat0");
  check_vector(c.theta_hat0, p, false, "init.theta_hat0");
  c.nu0 = kt.has("init.nu0") ? kt.vector("init.nu0") : c.theta_hat0;
  check_vector(c.nu0, p, false, "init.nu0");

  c.ref_amplitude = kt.number("reference.amplitude");
  c.ref_frequency = kt.number("reference.frequency");
  check_positive(c.ref_frequency, "reference.frequency");

  c.sim.dt = kt.number_or("sim.dt", 1e-3);
  check_positive(c.sim.dt, "sim.dt");
  c.sim.horizon = kt.number_or("sim.horizon", 10.0);
  if (c.sim.horizon < 0.0) throw ConfigError("config: sim.horizon must be >= 0");
  c.sim.integrator = kt.has("sim.integrator")
                         ? parse_integrator(kt.string_value("sim.integrator"))
                         : IntegratorKind::RK4;
  c.sim.log_stride = kt.has("sim.log_stride") ? kt.integer("sim.log_stride") : 1;
  if (c.sim.log_stride < 1)
    throw ConfigError("config: sim.log_stride must be >= 1");

  c.projection.enabled =
      kt.has("projection.enabled") ? kt.boolean("projection.enabled") : false;
  if (c.projection.enabled) {
    c.projection.radius = kt.number("projection.radius");
    check_positive(c.projection.radius, "projection.radius");
    c.projection.boundary_layer = kt.number_or("projection.boundary_layer", 0.1);
    check_positive(c.projection.boundary_layer, "projection.boundary_layer");
    c.projection.center = kt.has("projection.center")
                              ? kt.vector("projection.center")
                              : VectorXd::Zero(p).eval();
    check_vector(c.projection.center, p, false, "projection.center");
  }

  kt.reject_unconsumed();
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioConfig& c) {
  const bool robot = c.plant == PlantKind::TWO_LINK;
  std::ostringstream out;
  out << "plant = "
      << (robot ? "two_link" : "double_integrator") << "\n";
  const char* ctrl = nullptr;
  switch (c.controller) {
    case ControllerKind::ACBF: ctrl = "acbf"; break;
    case ControllerKind::RACBF: ctrl = "racbf"; break;
    case ControllerKind::TRACBF: ctrl = "tracbf"; break;
    case ControllerKind::SLOTINE_LI_HOT: ctrl = "slotine_li_hot"; break;
  }
  out << "controller = " << ctrl << "\n\n";

  out << "gains.gamma = " << fmt(c.gains.Gamma) << "\n";
  if (c.controller != ControllerKind::ACBF)
    out << "gains.alpha = " << fmt(c.gains.alpha) << "\n";
  if (c.controller == ControllerKind::TRACBF ||
      c.controller == ControllerKind::SLOTINE_LI_HOT)
    out << "gains.beta = " << fmt(c.gains.beta) << "\n";
  if (c.controller != ControllerKind::ACBF)
    out << "gains.theta_tilde_bound = " << fmt(c.gains.theta_tilde_bound)
        << "\n";
  if (robot) {
    out << "gains.k = " << fmt(c.gains.K) << "\n";
    out << "gains.lambda = " << fmt(c.gains.Lambda) << "\n";
    out << "gains.mu = " << fmt(c.gains.mu) << "\n";
    out << "gains.epsilon = " << fmt(c.gains.epsilon) << "\n";
  }
  out << "\n";

  if (robot) {
    out << "barrier.qm = " << fmt(c.qm) << "\n";
    out << "barrier.lambda_h = " << fmt(c.lambda_h) << "\n";
    out << "filter.sigma = " << fmt(c.sigma) << "\n\n";
    out << "init.q0 = " << fmt(c.q0) << "\n";
    out << "init.qdot0 = " << fmt(c.qdot0) << "\n";
  } else {
    out << "barrier.x1max = " << fmt(c.x1max) << "\n";
    out << "barrier.rho = " << fmt(c.rho) << "\n";
    out << "barrier.delta = " << fmt(c.delta) << "\n\n";
    out << "nominal.k1 = " << fmt(c.k1) << "\n";
    out << "nominal.k2 = " << fmt(c.k2) << "\n\n";
    out << "init.x0 = " << fmt(c.x0) << "\n";
  }
  out << "init.theta_hat0 = " << fmt(c.theta_hat0) << "\n";
  out << "init.nu0 = " << fmt(c.nu0) << "\n\n";

  out << "reference.amplitude = " << fmt(c.ref_amplitude) << "\n";
  out << "reference.frequency = " << fmt(c.ref_frequency) << "\n\n";

  out << "sim.dt = " << fmt(c.sim.dt) << "\n";
  out << "sim.horizon = " << fmt(c.sim.horizon) << "\n";
  out << "sim.integrator = "
      << (c.sim.integrator == IntegratorKind::RK4 ? "rk4" : "euler") << "\n";
  out << "sim.log_stride = " << c.sim.log_stride << "\n\n";

  out << "projection.enabled = " << (c.projection.enabled ? "true" : "false")
      << "\n";
  if (c.projection.enabled) {
    out << "projection.center = " << fmt(c.projection.center) << "\n";
    out << "projection.radius = " << fmt(c.projection.radius) << "\n";
    out << "projection.boundary_layer = " << fmt(c.projection.boundary_layer)
        << "\n";
  }
  return out.str();
}

SinusoidReference scenario_reference(const ScenarioConfig& c) {
  return SinusoidReference{c.ref_amplitude, c.ref_frequency};
}

JointSinusoidTrajectory scenario_trajectory(const ScenarioConfig& c) {
  return JointSinusoidTrajectory{c.ref_amplitude, c.ref_frequency, 2};
}

DoubleIntegratorBarrier scenario_di_barrier(const ScenarioConfig& c) {
  return DoubleIntegratorBarrier{c.x1max, c.rho, c.delta};
}

SoftminBoxBarrier scenario_box_barrier(const ScenarioConfig& c) {
  return SoftminBoxBarrier{c.qm, c.lambda_h};
}

ProjectionBall scenario_projection_ball(const ScenarioConfig& c) {
  return ProjectionBall{c.projection.center, c.projection.radius,
                        c.projection.boundary_layer};
}

}  // namespace tracbf
