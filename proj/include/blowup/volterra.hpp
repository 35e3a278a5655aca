#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "blowup/exponents.hpp"
#include "blowup/frames.hpp"
#include "blowup/integrals.hpp"

namespace blowup {

/// Settings of one forward-marching solve of
///   H(t) = F(t) + B (log t)^x int_R^t ds int_R^s r^y (log(r/R))^z H(r)^p dr,
///   F(t) = A t^a (log t)^{-b} (log(t/R))^c.
struct SolveSpec {
    double h = 1e-3;        ///< step in sigma = log(t/R)
    double horizon = 0.0;   ///< sigma_max
    /// Absolute blow-up threshold. When empty, cap_factor * max(1, sup F).
    std::optional<double> cap;
    double cap_factor = 1e12;
    int sweeps = 1;         ///< corrector sweeps per node
};

/// Default spec: horizon at log t = horizon_factor * log T_bound.
SolveSpec default_solve_spec(const ProblemParams& params, IndexMode mode = IndexMode::AsPrinted,
                             double horizon_factor = 1.2);

enum class SolveStatus { BlewUp, Survived };

struct Solution {
    ProblemParams params;
    LogGrid grid;
    // Nodes 0..n-1 actually computed; the blow-up node is kept when H is finite there.
    Eigen::ArrayXd sigma;
    Eigen::ArrayXd t;
    Eigen::ArrayXd forcing;
    Eigen::ArrayXd H;
    Eigen::ArrayXd inner;
    Eigen::ArrayXd outer;

    SolveStatus status = SolveStatus::Survived;
    /// Cap-crossing time (log-linear interpolation in log H); NaN when Survived.
    double T_num = 0.0;
    double log_T_num = 0.0;
    Eigen::Index blowup_node = -1;
    double horizon = 0.0;
    double cap = 0.0;
    /// F alone reaches the cap at the first interior node.
    bool forcing_dominated = false;

    double max_growth_ratio = 1.0;
    double max_corrector_change = 0.0;  ///< max |H - H_predicted| / H over the last sweep
};

/// Forcing F at the nodes of a grid.
Eigen::ArrayXd forcing_values(const ProblemParams& params, const LogGrid& grid);

/// Marches node by node: a predictor that omits the node's own cell
/// contribution, then spec.sweeps corrector sweeps. Stops at the first node
/// where H exceeds the cap or overflows.
///
/// Throws SpecError when the settings are inconsistent (cap below the
/// forcing maximum, c < 0 so that F is unbounded at t = R) and NumericalError
/// when a NaN appears below the cap. B == 0 is accepted.
Solution solve(const ProblemParams& params, const SolveSpec& spec);

struct BlowupEstimate {
    bool blew_up = false;
    double T_num = 0.0;      ///< at the finest level
    double log_T_num = 0.0;
    std::vector<double> h_levels;
    std::vector<double> log_T_levels;
    std::vector<double> deltas;  ///< |log T_l - log T_{l-1}|
    bool converged = false;
    bool forcing_dominated = false;
    double cap = 0.0;  ///< cap used at the finest level
    std::string note;
};

/// Re-solves at h, h/2, h/4, ... (refinements levels). Converged when the
/// last change in log T_num is below 1% of log T_num.
BlowupEstimate blowup_time(const ProblemParams& params, const SolveSpec& spec,
                           int refinements = 3);

}  // namespace blowup
