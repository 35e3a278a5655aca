#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "blowup/auditor.hpp"
#include "blowup/config.hpp"
#include "blowup/errors.hpp"
#include "blowup/frames.hpp"
#include "blowup/lifespan.hpp"
#include "blowup/report.hpp"
#include "blowup/sweep.hpp"
#include "blowup/volterra.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kInputFailure = 1,
    kNumericalFailure = 2,
    kBoundViolation = 3,
};

struct Overrides {
    std::string config_path;
    std::vector<std::string> settings;
    std::optional<std::string> mode;
    std::string format = "csv";
    bool trace = false;
    bool refine = false;
    std::string out;
    std::optional<double> a, b, c, x, y, z, p, A, B, R;
    std::optional<double> h, cap, cap_factor, horizon;
    std::optional<int> refinements, frames;
    std::vector<double> amplitudes;
};

blowup::Config build_config(const Overrides& o) {
    blowup::Config cfg = o.config_path.empty() ? blowup::Config{} : blowup::load_config(o.config_path);
    for (const auto& s : o.settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw blowup::InputError("--set expects section.key=value");
        blowup::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    auto& q = cfg.params;
    auto take = [](double& dst, const std::optional<double>& v) { if (v) dst = *v; };
    take(q.a, o.a); take(q.b, o.b); take(q.c, o.c); take(q.x, o.x); take(q.y, o.y);
    take(q.z, o.z); take(q.p, o.p); take(q.A, o.A); take(q.B, o.B); take(q.R, o.R);
    take(cfg.h, o.h);
    take(cfg.cap_factor, o.cap_factor);
    if (o.cap) cfg.cap = o.cap;
    if (o.horizon) cfg.horizon = o.horizon;
    if (o.refinements) cfg.refinements = *o.refinements;
    if (o.frames) cfg.frames = *o.frames;
    if (!o.amplitudes.empty()) cfg.amplitudes = o.amplitudes;
    if (o.mode) cfg.mode = blowup::parse_index_mode(*o.mode);
    return cfg;
}

void emit(const Overrides& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw blowup::InputError("cannot write " + o.out);
    file << text;
}

double bound_or_nan(const blowup::Config& cfg) {
    try {
        return blowup::bound(cfg.params, cfg.mode).log_T_bound;
    } catch (const blowup::DegenerateExponentError&) {
        return std::nan("");
    }
}

int cmd_validate(const Overrides& o) {
    const auto cfg = build_config(o);
    const auto report = blowup::validate(cfg.params);
    emit(o, blowup::format_validation(report, blowup::parse_output_format(o.format)));
    if (!report.pass) {
        std::cerr << "validation failed: " << report.violations.front() << '\n';
        return kInputFailure;
    }
    return kOk;
}

int cmd_bound(const Overrides& o) {
    const auto cfg = build_config(o);
    const auto b = blowup::bound(cfg.params, cfg.mode);
    emit(o, blowup::format_bound(b, blowup::parse_output_format(o.format)));
    return kOk;
}

int cmd_iterate(const Overrides& o) {
    const auto cfg = build_config(o);
    blowup::require_valid(cfg.params);
    const auto exact = blowup::iterate_frames(cfg.params, cfg.mode, cfg.frames);
    std::vector<blowup::Frame> closed;
    for (const auto& f : exact) closed.push_back(blowup::closed_form(f.j, cfg.params, cfg.mode));
    emit(o, blowup::format_frames(exact, closed, blowup::parse_output_format(o.format)));
    return kOk;
}

int cmd_solve(const Overrides& o) {
    const auto cfg = build_config(o);
    const auto spec = cfg.solve_spec();
    const auto sol = blowup::solve(cfg.params, spec);
    std::optional<blowup::BlowupEstimate> estimate;
    if (o.refine && sol.status == blowup::SolveStatus::BlewUp) {
        estimate = blowup::blowup_time(cfg.params, spec, cfg.refinements);
    }
    const double log_T_bound = bound_or_nan(cfg);
    const auto summary = blowup::format_solution_summary(
        sol, estimate ? &*estimate : nullptr, log_T_bound, blowup::parse_output_format(o.format));
    if (o.trace) {
        emit(o, blowup::format_trace(sol));
        std::cerr << summary;
    } else {
        emit(o, summary);
    }
    const double log_T = estimate ? estimate->log_T_num : sol.log_T_num;
    if (sol.status == blowup::SolveStatus::BlewUp && log_T > log_T_bound) {
        std::cerr << "lifespan bound violated: log T_num " << log_T << " > log T_bound "
                  << log_T_bound << '\n';
        return kBoundViolation;
    }
    return kOk;
}

int cmd_audit(const Overrides& o) {
    const auto cfg = build_config(o);
    const auto sol = blowup::solve(cfg.params, cfg.solve_spec());
    const auto reports = blowup::run_audit(sol, cfg.audit_options());
    emit(o, blowup::format_audit(reports, blowup::parse_output_format(o.format)));
    for (const auto& r : reports) {
        if (!r.pass) {
            std::cerr << "audit check " << r.check << " j=" << r.j << " failed\n";
            return kBoundViolation;
        }
    }
    return kOk;
}

int cmd_sweep(const Overrides& o) {
    const auto cfg = build_config(o);
    const auto records = blowup::run_sweep(cfg.params, cfg.amplitudes, cfg.sweep_options());
    emit(o, blowup::format_sweep(records, blowup::parse_output_format(o.format)));
    bool numerical_failure = false;
    for (const auto& r : records) {
        if (!r.ok()) {
            std::cerr << "A=" << blowup::format_number(r.A) << ": " << r.error << '\n';
            numerical_failure = numerical_failure || r.error != "horizon too large";
        } else if (!r.note.empty()) {
            std::cerr << "A=" << blowup::format_number(r.A) << ": " << r.note << '\n';
        }
    }
    if (!blowup::bound_consistent(records)) {
        std::cerr << "lifespan bound violated: a converged run has margin < 0\n";
        return kBoundViolation;
    }
    return numerical_failure ? kNumericalFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lifespan bounds and blow-up experiments for a system of integral inequalities"};
    app.require_subcommand(1);
    Overrides o;

    app.add_option("--config", o.config_path, "TOML-style config file")->check(CLI::ExistingFile);
    app.add_option("--set", o.settings, "Override a config entry, section.key=value");
    app.add_option("--mode", o.mode, "Slice-width indexing")
        ->check(CLI::IsMember({"as-printed", "strict"}));
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--trace", o.trace, "solve: emit the per-node trace instead of the summary");
    app.add_flag("--refine", o.refine, "solve: add a grid refinement study");
    app.add_option("--out", o.out, "Write output to this file instead of stdout");

    auto* params = "Parameters";
    app.add_option("--a", o.a)->group(params);
    app.add_option("--b", o.b)->group(params);
    app.add_option("--c", o.c)->group(params);
    app.add_option("--x", o.x)->group(params);
    app.add_option("--y", o.y)->group(params);
    app.add_option("--z", o.z)->group(params);
    app.add_option("--p", o.p)->group(params);
    app.add_option("--A", o.A)->group(params);
    app.add_option("--B", o.B)->group(params);
    app.add_option("--R", o.R)->group(params);

    auto* solver = "Solver";
    app.add_option("--step", o.h, "Step h in log(t/R)")->group(solver);
    app.add_option("--cap", o.cap, "Absolute blow-up threshold")->group(solver);
    app.add_option("--cap-factor", o.cap_factor, "Threshold relative to max(1, sup F)")->group(solver);
    app.add_option("--horizon", o.horizon, "Largest log(t/R)")->group(solver);
    app.add_option("--refinements", o.refinements, "Grid levels for refinement")->group(solver);
    app.add_option("--frames", o.frames, "iterate: number of frames")->group(solver);
    app.add_option("--amplitudes", o.amplitudes, "sweep: amplitude list")->group(solver)->delimiter(',');

    int code = kOk;
    auto bind = [&](const char* name, const char* help, int (*fn)(const Overrides&)) {
        app.add_subcommand(name, help)->callback([&code, &o, fn] { code = fn(o); });
    };
    bind("validate", "Check the admissibility conditions", cmd_validate);
    bind("bound", "Lifespan upper bound and derived constants", cmd_bound);
    bind("iterate", "Frame recursion vs closed forms", cmd_iterate);
    bind("solve", "March the equality dynamics until blow-up", cmd_solve);
    bind("audit", "Numerically check the inequality chain on a solution", cmd_audit);
    bind("sweep", "Solve and bound across amplitudes", cmd_sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInputFailure;
    } catch (const blowup::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputFailure;
    } catch (const blowup::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return code;
}
