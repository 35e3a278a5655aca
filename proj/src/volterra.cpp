#include "blowup/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "blowup/errors.hpp"
#include "blowup/lifespan.hpp"

namespace blowup {

namespace {

constexpr double kRefinementTol = 0.01;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

SolveSpec default_solve_spec(const ProblemParams& params, IndexMode mode, double horizon_factor) {
    const auto b = bound(params, mode);
    SolveSpec spec;
    spec.horizon = horizon_factor * b.log_T_bound - std::log(params.R);
    return spec;
}

Eigen::ArrayXd forcing_values(const ProblemParams& q, const LogGrid& grid) {
    const Eigen::ArrayXd sigma = grid.sigmas();
    const Eigen::ArrayXd log_t = std::log(q.R) + sigma;
    Eigen::ArrayXd log_f = std::log(q.A) + q.a * log_t;
    if (q.b != 0.0) log_f -= q.b * log_t.log();
    if (q.c != 0.0) log_f += q.c * sigma.log();
    Eigen::ArrayXd f = log_f.exp();
    // sigma = 0: (log(t/R))^c is 0 for c > 0 and 1 for c == 0
    if (grid.n_max > 0 && q.c > 0.0) f(0) = 0.0;
    return f;
}

Solution solve(const ProblemParams& q, const SolveSpec& spec) {
    require_valid(q, ValidationOptions{.allow_zero_coupling = true});
    if (q.c < 0.0) {
        throw SpecError("solve: c < 0 makes the forcing unbounded at t = R");
    }
    if (spec.sweeps < 1) throw SpecError("solve: at least one corrector sweep is required");
    if (!(spec.horizon > 0.0)) throw SpecError("solve: horizon must be positive");

    const LogGrid grid = make_grid(q.R, spec.h, spec.horizon);
    const Eigen::Index n = grid.n_max;
    const Eigen::ArrayXd sigma = grid.sigmas();
    const Eigen::ArrayXd t = q.R * sigma.exp();
    const Eigen::ArrayXd forcing = forcing_values(q, grid);
    const double forcing_max = forcing.maxCoeff();

    Solution sol;
    sol.params = q;
    sol.grid = grid;
    sol.horizon = spec.horizon;
    sol.cap = spec.cap ? *spec.cap : spec.cap_factor * std::max(1.0, forcing_max);
    if (!(sol.cap > 0.0) || !std::isfinite(sol.cap)) throw SpecError("solve: cap must be positive");

    Eigen::ArrayXd H = Eigen::ArrayXd::Zero(n);
    Eigen::ArrayXd inner = Eigen::ArrayXd::Zero(n);
    Eigen::ArrayXd outer = Eigen::ArrayXd::Zero(n);
    H(0) = forcing(0);

    auto finish = [&](Eigen::Index count) {
        sol.sigma = sigma.head(count);
        sol.t = t.head(count);
        sol.forcing = forcing.head(count);
        sol.H = H.head(count);
        sol.inner = inner.head(count);
        sol.outer = outer.head(count);
    };

    if (n > 1 && forcing(1) >= sol.cap) {
        sol.forcing_dominated = true;
        sol.status = SolveStatus::BlewUp;
        sol.blowup_node = 1;
        sol.log_T_num = std::log(t(1));
        sol.T_num = t(1);
        H(1) = forcing(1);
        finish(2);
        return sol;
    }
    if (sol.cap <= forcing_max) {
        throw SpecError("solve: cap " + std::to_string(sol.cap) +
                        " is below the forcing maximum " + std::to_string(forcing_max));
    }

    const KernelExponents kernel = kernel_of(q);
    // F ~ A R^a (log R)^{-b} (log(r/R))^c near r = R
    const LocalModel local{q.A * std::pow(q.R, q.a) * std::pow(std::log(q.R), -q.b), q.c};
    const std::span<const double> phi(H.data(), static_cast<std::size_t>(n));

    MarchState state;
    Eigen::Index computed = n;
    for (Eigen::Index k = 1; k < n; ++k) {
        const double feedback = q.B * std::pow(std::log(t(k)), q.x);
        const auto phi_k = phi.first(static_cast<std::size_t>(k + 1));

        H(k) = 0.0;
        MarchState next = march_step(state, grid, k, phi_k, kernel, local);
        double value = forcing(k) + feedback * next.outer;
        double change = 0.0;
        for (int s = 0; s < spec.sweeps && std::isfinite(value); ++s) {
            H(k) = value;
            next = march_step(state, grid, k, phi_k, kernel, local);
            const double corrected = forcing(k) + feedback * next.outer;
            change = std::abs(corrected - value) / corrected;
            value = corrected;
        }

        if (std::isnan(value)) {
            throw NumericalError("solve: non-finite value below the cap at node " +
                                 std::to_string(k));
        }
        H(k) = value;
        inner(k) = next.inner;
        outer(k) = next.outer;
        if (std::isfinite(change)) {
            sol.max_corrector_change = std::max(sol.max_corrector_change, change);
        }
        if (H(k - 1) > 0.0 && std::isfinite(value)) {
            sol.max_growth_ratio = std::max(sol.max_growth_ratio, value / H(k - 1));
        }
        if (!(value >= forcing(k))) {
            throw NumericalError("solve: H dropped below the forcing at node " +
                                 std::to_string(k));
        }

        if (value > sol.cap) {
            sol.status = SolveStatus::BlewUp;
            sol.blowup_node = k;
            double crossing = sigma(k);
            if (std::isfinite(value) && H(k - 1) > 0.0) {
                const double lo = std::log(H(k - 1));
                const double hi = std::log(value);
                crossing = sigma(k - 1) + grid.h * (std::log(sol.cap) - lo) / (hi - lo);
            }
            sol.log_T_num = std::log(q.R) + crossing;
            sol.T_num = std::exp(sol.log_T_num);
            computed = std::isfinite(value) ? k + 1 : k;
            break;
        }
        state = next;
    }

    if (sol.status == SolveStatus::Survived) {
        sol.T_num = kNaN;
        sol.log_T_num = kNaN;
    }
    finish(computed);
    return sol;
}

BlowupEstimate blowup_time(const ProblemParams& q, const SolveSpec& spec, int refinements) {
    if (refinements < 2) throw InputError("blowup_time: at least two refinement levels");
    BlowupEstimate out;
    SolveSpec level = spec;
    for (int l = 0; l < refinements; ++l) {
        const Solution sol = solve(q, level);
        out.h_levels.push_back(level.h);
        out.cap = sol.cap;
        if (sol.status == SolveStatus::Survived) {
            out.blew_up = false;
            out.T_num = kNaN;
            out.log_T_num = kNaN;
            out.note = "no blow-up before horizon (h = " + std::to_string(level.h) + ")";
            return out;
        }
        out.forcing_dominated = out.forcing_dominated || sol.forcing_dominated;
        if (!out.log_T_levels.empty()) {
            out.deltas.push_back(std::abs(sol.log_T_num - out.log_T_levels.back()));
        }
        out.log_T_levels.push_back(sol.log_T_num);
        level.h *= 0.5;
    }
    out.blew_up = true;
    out.log_T_num = out.log_T_levels.back();
    out.T_num = std::exp(out.log_T_num);
    out.converged = out.deltas.back() < kRefinementTol * std::abs(out.log_T_num);
    if (out.forcing_dominated) out.note = "forcing-dominated";
    if (!out.converged) {
        bool shrinking = true;
        for (std::size_t i = 1; i < out.deltas.size(); ++i) {
            shrinking = shrinking && out.deltas[i] < out.deltas[i - 1];
        }
        out.note = shrinking ? "refinement not yet converged"
                             : "refinement sequence neither monotone nor converging";
    }
    return out;
}

}  // namespace blowup
