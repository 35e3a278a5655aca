#include "blowup/auditor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

constexpr double kFirstInequalityTol = 1e-12;
constexpr double kRadiusGuard = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
// log of the smallest positive normal double
const double kLogUnderflow = std::log(std::numeric_limits<double>::min());

void record(CheckReport& report, std::size_t index, double t, double margin, bool ok) {
    report.margins.push_back(margin);
    report.worst_margin = report.checked == 0 ? margin : std::min(report.worst_margin, margin);
    ++report.checked;
    if (!ok) {
        report.pass = false;
        report.violations.push_back({index, t, margin});
    }
}

}  // namespace

CheckReport check_first_inequality(const Solution& sol) {
    CheckReport report;
    report.check = "first_inequality";
    report.j = 0;
    for (Eigen::Index k = 0; k < sol.H.size(); ++k) {
        const double H = sol.H(k);
        const double F = sol.forcing(k);
        const double margin = F > 0.0 ? (H - F) / F : H - F;
        record(report, static_cast<std::size_t>(k), sol.t(k), margin,
               H >= F * (1.0 - kFirstInequalityTol));
    }
    return report;
}

CheckReport check_frame_dominates(const Solution& sol, const Frame& frame, IndexMode mode,
                                  double rel_tol) {
    if (frame.mode != mode) throw InputError("check_frame_dominates: index mode mismatch");
    if (frame.power != sol.params.a) {
        throw InputError("check_frame_dominates: frame built for different parameters");
    }
    if (sol.forcing_dominated) {
        throw InputError("check_frame_dominates: solution is forcing-dominated");
    }
    CheckReport report;
    report.check = "frame_dominates";
    report.j = frame.j;
    const double start = frame.slice_radius * (1.0 + kRadiusGuard);
    for (Eigen::Index k = 0; k < sol.H.size(); ++k) {
        const double t = sol.t(k);
        if (t < start) continue;
        const double frame_log = eval_log(frame, t);
        const double log_H = std::log(sol.H(k));
        const double margin = log_H - frame_log;
        if (frame_log < kLogUnderflow) ++report.trivially_dominated;
        record(report, static_cast<std::size_t>(k), t, margin, margin >= -rel_tol);
    }
    return report;
}

std::vector<double> step_samples(const Frame& next_frame, std::size_t count, double lo,
                                 double hi) {
    std::vector<double> out;
    out.reserve(count);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        const double s = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(next_frame.slice_radius * std::exp(a + (b - a) * s));
    }
    return out;
}

CheckReport check_iteration_step(const Frame& frame, const ProblemParams& q,
                                 const std::vector<double>& samples,
                                 const StepCheckOptions& options) {
    if (frame.power != q.a) {
        throw InputError("check_iteration_step: frame built for different parameters");
    }
    const Frame next = advance(frame, q, frame.mode);
    const LogProfile log_phi = [&frame](double r) { return eval_log_extended(frame, r); };
    const KernelExponents kernel = kernel_of(q);

    CheckReport report;
    report.check = "iteration_step";
    report.j = frame.j;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double t = samples[i];
        if (t <= next.slice_radius) {
            // frame_{j+1} vanishes here
            record(report, i, t, kInf, true);
            continue;
        }
        // frame_j^p must stay representable somewhere on [R_j, t]
        if (q.p * eval_log(frame, t) < kLogUnderflow) {
            ++report.skipped;
            continue;
        }
        const auto integral =
            double_integral_oracle(t, log_phi, kernel, q.R, frame.slice_radius, options.oracle);
        const double log_rhs = std::log(q.B) + q.x * std::log(std::log(t)) + std::log(integral.value);
        const double margin = log_rhs - eval_log(next, t);
        record(report, i, t, margin, margin >= -options.tolerance);
    }
    return report;
}

std::vector<CheckReport> run_audit(const Solution& sol, const AuditOptions& options) {
    std::vector<CheckReport> reports;
    reports.push_back(check_first_inequality(sol));
    const int frame_count = std::max(options.max_dominance_frame, options.max_step_frame) + 1;
    const auto frames = iterate_frames(sol.params, options.mode, frame_count);
    for (int j = 0; j <= options.max_dominance_frame; ++j) {
        reports.push_back(
            check_frame_dominates(sol, frames[static_cast<std::size_t>(j)], options.mode, options.rel_tol));
    }
    for (int j = 0; j <= options.max_step_frame; ++j) {
        const Frame& frame = frames[static_cast<std::size_t>(j)];
        const Frame next = advance(frame, sol.params, options.mode);
        reports.push_back(check_iteration_step(frame, sol.params,
                                               step_samples(next, options.step_samples),
                                               options.step));
    }
    return reports;
}

}  // namespace blowup
