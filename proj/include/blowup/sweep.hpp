#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "blowup/exponents.hpp"
#include "blowup/frames.hpp"
#include "blowup/lifespan.hpp"

namespace blowup {

struct SweepOptions {
    IndexMode mode = IndexMode::AsPrinted;
    double h = 1e-3;
    double cap_factor = 1e12;
    int sweeps = 1;
    int refinements = 3;
    double horizon_factor = 1.2;
    /// Amplitudes whose log T_bound exceeds this are refused ("horizon too large").
    double max_log_T_bound = 13.0;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct SweepRecord {
    double A = 0.0;
    ProblemParams params;
    double theta = 0.0;
    Branch branch = Branch::Formula;
    double log_T_bound = 0.0;
    bool blew_up = false;
    double log_T_num = 0.0;  ///< NaN when the run survived or failed
    double margin = 0.0;     ///< log_T_bound - log_T_num
    double h = 0.0;          ///< finest step used
    double cap = 0.0;        ///< cap at the finest level
    bool converged = false;
    std::string error;       ///< non-empty when this record failed
    std::string note;

    bool ok() const { return error.empty(); }
};

/// One record per amplitude, in input order. A failure in one record is
/// captured in its `error` field and does not affect the others. Throws
/// InputError for an empty list.
std::vector<SweepRecord> run_sweep(const ProblemParams& base, const std::vector<double>& amplitudes,
                                   const SweepOptions& options = {});

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Least-squares fit of log T_num against A^{-(p-1)/theta} over the
/// converged, blown-up records. Throws InputError with fewer than 3.
ScalingFit scaling_fit(const std::vector<SweepRecord>& records, double theta);

/// True when every converged, blown-up record has margin >= 0.
bool bound_consistent(const std::vector<SweepRecord>& records);

}  // namespace blowup
