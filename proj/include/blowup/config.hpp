#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blowup/auditor.hpp"
#include "blowup/exponents.hpp"
#include "blowup/frames.hpp"
#include "blowup/sweep.hpp"
#include "blowup/volterra.hpp"

namespace blowup {

/// Everything the command-line front-end can be told. Sections of the
/// TOML-style file map onto the groups below:
///
///   [params]  a b c x y z p A B R
///   [run]     mode
///   [solve]   h cap cap_factor horizon horizon_factor sweeps refinements
///   [audit]   max_dominance_frame max_step_frame samples rel_tol step_tolerance oracle_rel_tol
///   [iterate] frames
///   [sweep]   amplitudes threads max_log_T_bound
struct Config {
    ProblemParams params = canonical_params(2.0);
    IndexMode mode = IndexMode::AsPrinted;

    double h = 1e-3;
    std::optional<double> cap;
    double cap_factor = 1e12;
    std::optional<double> horizon;
    double horizon_factor = 1.2;
    int sweeps = 1;
    int refinements = 3;

    int max_dominance_frame = 4;
    int max_step_frame = 3;
    int step_samples = 24;
    double rel_tol = 1e-6;
    double step_tolerance = 1e-6;
    double oracle_rel_tol = 1e-10;

    int frames = kDefaultFrameCap + 1;

    std::vector<double> amplitudes = {50.0, 100.0, 200.0, 400.0};
    unsigned threads = 0;
    double max_log_T_bound = 13.0;

    /// Solve spec for the configured parameters; the horizon defaults to
    /// horizon_factor * log T_bound.
    SolveSpec solve_spec() const;
    AuditOptions audit_options() const;
    SweepOptions sweep_options() const;
};

/// Sets one `section.key` from its textual value. Throws InputError for an
/// unknown key or a malformed value.
void apply_setting(Config& config, const std::string& dotted_key, const std::string& value);

/// Parses a TOML-style file. When `require_params` is set every field of
/// [params] must be named. Throws InputError on any problem.
Config parse_config(std::istream& input, bool require_params = true);
Config load_config(const std::string& path, bool require_params = true);

}  // namespace blowup
