#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracbf/certify.hpp"
#include "tracbf/sim_engine.hpp"
#include "tracbf/trace_io.hpp"

namespace fs = std::filesystem;
using namespace tracbf;

namespace {

// Exit codes: 0 all checks pass, 1 monitor failure, 2 start-condition
// failure, 3 divergence, 64 usage or config error.
constexpr int kExitOk = 0;
constexpr int kExitMonitorFail = 1;
constexpr int kExitGateFail = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitUsage = 64;

CheckReport run_monitors(const std::vector<TraceRecord>& trace,
                         const ScenarioConfig& cfg) {
  return cfg.plant == PlantKind::TWO_LINK ? monitor_robot(trace, cfg)
                                          : monitor_affine(trace, cfg);
}

double max_abs_joint(const std::vector<TraceRecord>& trace) {
  double m = 0.0;
  for (const TraceRecord& rec : trace)
    m = std::max(m, rec.x.segment(0, 2).cwiseAbs().maxCoeff());
  return m;
}

void print_summary(const std::string& label, const ScenarioConfig& cfg,
                   const RunResult& res, const EffortMetrics& eff,
                   bool monitors_pass) {
  std::printf(
      "%s status=%s monitors=%s min_h=%.9g min_aug=%.9g max_abs_u=%.9g "
      "l2_effort=%.9g smoothness=%.9g tracking_error=%.9g",
      label.c_str(), res.status == RunStatus::OK ? "ok" : "diverged",
      monitors_pass ? "pass" : "fail", res.summary.min_h, res.summary.min_aug,
      eff.max_abs_u, eff.l2_effort, eff.smoothness,
      res.summary.final_tracking_error);
  if (cfg.plant == PlantKind::TWO_LINK)
    std::printf(" max_abs_q=%.9g", max_abs_joint(res.trace));
  std::printf("\n");
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  const ScenarioConfig cfg = load_scenario(config_path);
  fs::create_directories(out_dir);
  const fs::path out(out_dir);

  const CheckReport gates = check_conditions(cfg);
  if (!gates.pass) {
    write_text((out / "report.txt").string(), format_check_report(gates));
    std::cout << format_check_report(gates);
    std::cout << "start conditions failed; no run\n";
    return kExitGateFail;
  }

  const RunResult res = run(cfg);
  write_trace_csv((out / "trace.csv").string(), cfg.plant, res.trace);

  if (res.status == RunStatus::DIVERGED) {
    write_text((out / "report.txt").string(),
               format_check_report(gates) + "diverged: " + res.message + "\n");
    std::cout << "diverged: " << res.message << "\n";
    return kExitDiverged;
  }

  const CheckReport mon = run_monitors(res.trace, cfg);
  const EffortMetrics eff = effort_metrics(res.trace);
  write_text((out / "report.txt").string(),
             format_check_report(gates) + format_check_report(mon) +
                 format_effort_metrics(eff));
  std::cout << format_check_report(mon);
  print_summary("run", cfg, res, eff, mon.pass);
  return mon.pass ? kExitOk : kExitMonitorFail;
}

int cmd_check(const std::string& config_path) {
  const ScenarioConfig cfg = load_scenario(config_path);
  const CheckReport gates = check_conditions(cfg);
  std::cout << format_check_report(gates);
  return gates.pass ? kExitOk : kExitGateFail;
}

int cmd_compare(const std::string& config_path, const std::string& out_dir) {
  ScenarioConfig base = load_scenario(config_path);
  if (base.plant != PlantKind::DOUBLE_INTEGRATOR)
    throw ConfigError("compare: requires a double-integrator scenario");
  fs::create_directories(out_dir);
  const fs::path out(out_dir);

  ScenarioConfig robust = base, tunable = base;
  robust.controller = ControllerKind::RACBF;
  tunable.controller = ControllerKind::TRACBF;

  const CheckReport gates_r = check_conditions(robust);
  const CheckReport gates_t = check_conditions(tunable);
  if (!gates_r.pass || !gates_t.pass) {
    const std::string text = "racbf gates:\n" + format_check_report(gates_r) +
                             "tracbf gates:\n" + format_check_report(gates_t);
    write_text((out / "report.txt").string(), text);
    std::cout << text << "start conditions failed; no run\n";
    return kExitGateFail;
  }

  const RunResult res_r = run(robust);
  const RunResult res_t = run(tunable);
  write_trace_csv((out / "racbf_trace.csv").string(), robust.plant,
                  res_r.trace);
  write_trace_csv((out / "tracbf_trace.csv").string(), tunable.plant,
                  res_t.trace);
  if (res_r.status == RunStatus::DIVERGED ||
      res_t.status == RunStatus::DIVERGED) {
    std::cout << "diverged: " << res_r.message << res_t.message << "\n";
    return kExitDiverged;
  }

  const CheckReport mon_r = run_monitors(res_r.trace, robust);
  const CheckReport mon_t = run_monitors(res_t.trace, tunable);
  const EffortMetrics eff_r = effort_metrics(res_r.trace);
  const EffortMetrics eff_t = effort_metrics(res_t.trace);

  const std::vector<CompareRow> rows = {{"racbf", mon_r.pass, eff_r},
                                        {"tracbf", mon_t.pass, eff_t}};
  write_text((out / "compare.csv").string(), format_compare_csv(rows));
  write_text((out / "report.txt").string(),
             "racbf monitors:\n" + format_check_report(mon_r) +
                 "tracbf monitors:\n" + format_check_report(mon_t) +
                 "racbf effort:\n" + format_effort_metrics(eff_r) +
                 "tracbf effort:\n" + format_effort_metrics(eff_t));

  print_summary("racbf", robust, res_r, eff_r, mon_r.pass);
  print_summary("tracbf", tunable, res_t, eff_t, mon_t.pass);
  const bool effort_ordered = eff_t.l2_effort < eff_r.l2_effort;
  std::printf("effort_ordered=%s\n", effort_ordered ? "true" : "false");
  return (mon_r.pass && mon_t.pass && effort_ordered) ? kExitOk
                                                      : kExitMonitorFail;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= csv.size()) {
    const size_t comma = csv.find(',', pos);
    const std::string tok =
        csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ConfigError("sweep: bad value '" + tok + "'");
    }
    if (used != tok.size()) throw ConfigError("sweep: bad value '" + tok + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base,
                                 const std::string& param, double v) {
  ScenarioConfig cfg = base;
  if (param == "beta") {
    cfg.gains.beta = v;
  } else if (param == "gamma") {
    cfg.gains.Gamma.setConstant(v);
  } else {
    cfg.gains.K.setConstant(v);
  }
  return cfg;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::string& values_csv, const std::string& out_dir) {
  const ScenarioConfig base = load_scenario(config_path);
  const std::vector<double> values = parse_values(values_csv);
  fs::create_directories(out_dir);
  const fs::path out(out_dir);

  std::vector<SweepRow> rows;
  bool all_pass = true;
  for (size_t i = 0; i < values.size(); ++i) {
    SweepRow row;
    row.value = values[i];
    row.min_h = std::nan("");
    row.l2_effort = std::nan("");
    row.smoothness = std::nan("");

    ScenarioConfig cfg;
    bool gated = false;
    try {
      cfg = apply_sweep_value(base, param, values[i]);
      gated = !check_conditions(cfg).pass;
    } catch (const std::exception&) {
      gated = true;  // non-positive gains and similar invalid values
    }
    if (gated) {
      row.status = "gate_failed";
    } else {
      const RunResult res = run(cfg);
      char name[64];
      std::snprintf(name, sizeof(name), "trace_%s_%zu.csv", param.c_str(), i);
      write_trace_csv((out / name).string(), cfg.plant, res.trace);
      if (res.status == RunStatus::DIVERGED) {
        row.status = "diverged";
      } else {
        const EffortMetrics eff = effort_metrics(res.trace);
        row.min_h = res.summary.min_h;
        row.l2_effort = eff.l2_effort;
        row.smoothness = eff.smoothness;
        row.status = run_monitors(res.trace, cfg).pass ? "pass" : "fail";
      }
    }
    all_pass = all_pass && row.status == "pass";
    rows.push_back(row);
  }

  const std::string csv = format_sweep_csv(rows);
  write_text((out / "sweep.csv").string(), csv);
  std::cout << csv;
  return all_pass ? kExitOk : kExitMonitorFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive barrier-certified simulation runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", param, values_csv;

  CLI::App* c_run = app.add_subcommand("run", "simulate one scenario");
  c_run->add_option("config", config_path, "scenario file")->required();
  c_run->add_option("-o,--output", out_dir, "output directory");

  CLI::App* c_check =
      app.add_subcommand("check", "evaluate start conditions only");
  c_check->add_option("config", config_path, "scenario file")->required();

  CLI::App* c_compare = app.add_subcommand(
      "compare", "run the scenario under the robust and tunable filters");
  c_compare->add_option("config", config_path, "scenario file")->required();
  c_compare->add_option("-o,--output", out_dir, "output directory");

  CLI::App* c_sweep =
      app.add_subcommand("sweep", "rerun the scenario across one gain");
  c_sweep->add_option("config", config_path, "scenario file")->required();
  c_sweep->add_option("--param", param, "beta | gamma | K")
      ->required()
      ->check(CLI::IsMember({"beta", "gamma", "K"}));
  c_sweep->add_option("--values", values_csv, "comma-separated values")
      ->required();
  c_sweep->add_option("-o,--output", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_run->parsed()) return cmd_run(config_path, out_dir);
    if (c_check->parsed()) return cmd_check(config_path);
    if (c_compare->parsed()) return cmd_compare(config_path, out_dir);
    return cmd_sweep(config_path, param, values_csv, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
