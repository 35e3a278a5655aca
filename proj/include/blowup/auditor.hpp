#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "blowup/frames.hpp"
#include "blowup/integrals.hpp"
#include "blowup/volterra.hpp"

namespace blowup {

struct Violation {
    std::size_t index = 0;  ///< node or sample index
    double t = 0.0;
    double margin = 0.0;
};

/// Outcome of one audited inequality. Margins are reported as computed,
/// failures are entries in `violations`, never exceptions.
struct CheckReport {
    std::string check;
    int j = -1;
    bool pass = true;
    double worst_margin = 0.0;
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::size_t trivially_dominated = 0;
    std::vector<Violation> violations;
    std::vector<double> margins;  ///< per checked point, in order
};

/// H(t_k) >= F(t_k) (1 - 1e-12) at every node. The margin is (H - F)/F,
/// or H - F where F vanishes.
CheckReport check_first_inequality(const Solution& solution);

/// log H(t_k) >= eval_log(frame, t_k) - rel_tol at every node with
/// t_k >= R_j (1 + 1e-9). Nodes where the frame value underflows are
/// counted as trivially dominated. Throws InputError when the frame was not
/// built for the solution's parameters or index mode.
CheckReport check_frame_dominates(const Solution& solution, const Frame& frame,
                                  IndexMode mode, double rel_tol = 1e-6);

struct StepCheckOptions {
    double tolerance = 1e-6;
    OracleOptions oracle{.rel_tol = 1e-10};
};

/// Pushes frame_j through the feedback term with the reference quadrature,
///   RHS(t) = B (log t)^x int_{R_j}^t (t - r) r^y (log(r/R))^z frame_j(r)^p dr,
/// and checks log RHS(t) >= eval_log(frame_{j+1}, t) - tolerance at every
/// sample. Samples at or below R_{j+1} pass at the boundary (frame value 0).
/// Samples where frame_j underflows are skipped. Oracle failures propagate.
CheckReport check_iteration_step(const Frame& frame, const ProblemParams& params,
                                 const std::vector<double>& samples,
                                 const StepCheckOptions& options = {});

/// `count` log-spaced samples of log(t/R_{j+1}) over [log lo, log hi].
std::vector<double> step_samples(const Frame& next_frame, std::size_t count = 24,
                                 double lo = 1.1, double hi = 20.0);

struct AuditOptions {
    IndexMode mode = IndexMode::AsPrinted;
    int max_dominance_frame = 4;
    int max_step_frame = 3;
    std::size_t step_samples = 24;
    double rel_tol = 1e-6;
    StepCheckOptions step;
};

/// First inequality, frame dominance for j = 0..max_dominance_frame and
/// iteration steps for j = 0..max_step_frame.
std::vector<CheckReport> run_audit(const Solution& solution, const AuditOptions& options = {});

}  // namespace blowup
