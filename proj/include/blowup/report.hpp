#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "blowup/auditor.hpp"
#include "blowup/exponents.hpp"
#include "blowup/frames.hpp"
#include "blowup/lifespan.hpp"
#include "blowup/sweep.hpp"
#include "blowup/volterra.hpp"

namespace blowup {

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(std::string_view text);

/// 17 significant digits, so every double round-trips.
std::string format_number(double value);

std::string format_validation(const ValidationReport& report, OutputFormat format);
std::string format_bound(const LifespanBound& bound, OutputFormat format);

/// Columns j, b_j, c_j, R_j, log_A_exact, log_A_closed_form.
std::string format_frames(const std::vector<Frame>& exact, const std::vector<Frame>& closed,
                          OutputFormat format);

std::string format_solution_summary(const Solution& solution, const BlowupEstimate* estimate,
                                    double log_T_bound, OutputFormat format);

/// Columns t, sigma, F, H, I, J.
std::string format_trace(const Solution& solution);

/// Columns check, j, pass, worst_margin, samples_skipped, checked, trivially_dominated.
std::string format_audit(const std::vector<CheckReport>& reports, OutputFormat format);

/// Columns A, p, B, R, theta, branch, log_T_bound, log_T_num, margin, h, cap, converged.
std::string format_sweep(const std::vector<SweepRecord>& records, OutputFormat format);

}  // namespace blowup
