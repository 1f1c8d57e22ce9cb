#include "tracbf/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tracbf {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Shorter form for human-facing reports; still round-trips the constants the
// scenarios use.
std::string num9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void append_vector(std::string& line, const VectorXd& v) {
  for (int i = 0; i < v.size(); ++i) {
    line += ',';
    line += num(v[i]);
  }
}

}  // namespace

std::vector<std::string> trace_columns(PlantKind plant) {
  if (plant == PlantKind::DOUBLE_INTEGRATOR) {
    return {"t",    "x_1",  "x_2",         "u_1",         "nu_1", "nu_2",
            "theta_hat_1", "theta_hat_2", "h", "h_a", "constraint_margin"};
  }
  return {"t",           "q_1",         "q_2",         "qd_1",
          "qd_2",        "u_1",         "u_2",         "nu_1",
          "nu_2",        "nu_3",        "theta_hat_1", "theta_hat_2",
          "theta_hat_3", "h",           "V",           "B",
          "s_1",         "s_2",         "constraint_margin"};
}

void write_trace_csv(std::ostream& os, PlantKind plant,
                     const std::vector<TraceRecord>& trace) {
  const std::vector<std::string> cols = trace_columns(plant);
  std::string line;
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) line += ',';
    line += cols[i];
  }
  os << line << '\n';

  const bool robot = plant == PlantKind::TWO_LINK;
  for (const TraceRecord& rec : trace) {
    line = num(rec.t);
    append_vector(line, rec.x);
    append_vector(line, rec.u);
    append_vector(line, rec.nu);
    append_vector(line, rec.theta_hat);
    line += ',';
    line += num(rec.h);
    if (robot) {
      line += ',';
      line += num(rec.V);
      line += ',';
      line += num(rec.h_a);
      append_vector(line, rec.s);
    } else {
      line += ',';
      line += num(rec.h_a);
    }
    line += ',';
    line += num(rec.constraint_margin);
    os << line << '\n';
  }
}

void write_trace_csv(const std::string& path, PlantKind plant,
                     const std::vector<TraceRecord>& trace) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_trace_csv(os, plant, trace);
}

std::string format_check_report(const CheckReport& report) {
  std::string out;
  for (const CheckEntry& e : report.entries) {
    out += e.name;
    out += ' ';
    out += num9(e.lhs);
    out += ' ';
    out += e.rel;
    out += ' ';
    out += num9(e.rhs);
    out += e.pass ? " PASS" : " FAIL";
    out += '\n';
  }
  return out;
}

std::string format_effort_metrics(const EffortMetrics& m) {
  std::string out = "l2_effort ";
  out += num9(m.l2_effort);
  out += "\nsmoothness ";
  out += num9(m.smoothness);
  out += "\nmax_abs_u ";
  out += num9(m.max_abs_u);
  out += '\n';
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << text;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "value,min_h,l2_effort,smoothness,pass\n";
  for (const SweepRow& r : rows) {
    out += num(r.value);
    out += ',';
    out += num(r.min_h);
    out += ',';
    out += num(r.l2_effort);
    out += ',';
    out += num(r.smoothness);
    out += ',';
    out += r.status;
    out += '\n';
  }
  return out;
}

std::string format_compare_csv(const std::vector<CompareRow>& rows) {
  std::string out = "controller,safe,l2_effort,smoothness,max_abs_u\n";
  for (const CompareRow& r : rows) {
    out += r.controller;
    out += ',';
    out += r.safe ? "1" : "0";
    out += ',';
    out += num(r.effort.l2_effort);
    out += ',';
    out += num(r.effort.smoothness);
    out += ',';
    out += num(r.effort.max_abs_u);
    out += '\n';
  }
  return out;
}

}  // namespace tracbf
