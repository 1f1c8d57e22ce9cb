#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tracbf/certify.hpp"
#include "tracbf/scenario.hpp"

namespace tracbf {

/// Header row for a trace of the given plant, in file order.
std::vector<std::string> trace_columns(PlantKind plant);

/// CSV with a header row and 17-significant-digit values. Double-integrator
/// columns: t, x_1, x_2, u_1, nu_*, theta_hat_*, h, h_a, constraint_margin.
/// Two-link columns: t, q_1, q_2, qd_1, qd_2, u_1, u_2, nu_*, theta_hat_*, h,
/// V, B, s_1, s_2, constraint_margin.
void write_trace_csv(std::ostream& os, PlantKind plant,
                     const std::vector<TraceRecord>& trace);

/// Writes to a file; throws std::runtime_error when the file cannot be opened.
void write_trace_csv(const std::string& path, PlantKind plant,
                     const std::vector<TraceRecord>& trace);

/// One line per entry: `name lhs rel rhs PASS|FAIL`.
std::string format_check_report(const CheckReport& report);

std::string format_effort_metrics(const EffortMetrics& m);

void write_text(const std::string& path, const std::string& text);

struct SweepRow {
  double value = 0.0;
  double min_h = 0.0;
  double l2_effort = 0.0;
  double smoothness = 0.0;
  std::string status;  // pass | fail | gate_failed | diverged
};

/// CSV with header value,min_h,l2_effort,smoothness,pass.
std::string format_sweep_csv(const std::vector<SweepRow>& rows);

struct CompareRow {
  std::string controller;
  bool safe = false;
  EffortMetrics effort;
};

/// CSV with header controller,safe,l2_effort,smoothness,max_abs_u.
std::string format_compare_csv(const std::vector<CompareRow>& rows);

}  // namespace tracbf
