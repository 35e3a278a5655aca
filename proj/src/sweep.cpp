#include "blowup/sweep.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "blowup/errors.hpp"
#include "blowup/volterra.hpp"

namespace blowup {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepRecord run_one(const ProblemParams& base, double amplitude, const SweepOptions& options) {
    SweepRecord rec;
    rec.A = amplitude;
    rec.params = base;
    rec.params.A = amplitude;
    rec.log_T_num = kNaN;
    rec.margin = kNaN;
    try {
        const auto lb = bound(rec.params, options.mode);
        rec.theta = lb.theta;
        rec.branch = lb.branch;
        rec.log_T_bound = lb.log_T_bound;
        if (lb.log_T_bound > options.max_log_T_bound) {
            rec.error = "horizon too large";
            return rec;
        }
        SolveSpec spec;
        spec.h = options.h;
        spec.cap_factor = options.cap_factor;
        spec.sweeps = options.sweeps;
        spec.horizon = options.horizon_factor * lb.log_T_bound - std::log(rec.params.R);

        const auto estimate = blowup_time(rec.params, spec, options.refinements);
        rec.h = estimate.h_levels.back();
        rec.cap = estimate.cap;
        rec.blew_up = estimate.blew_up;
        rec.converged = estimate.converged;
        rec.note = estimate.note;
        if (estimate.blew_up) {
            rec.log_T_num = estimate.log_T_num;
            rec.margin = rec.log_T_bound - rec.log_T_num;
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const ProblemParams& base, const std::vector<double>& amplitudes,
                                   const SweepOptions& options) {
    if (amplitudes.empty()) throw InputError("run_sweep: amplitude list is empty");
    std::vector<SweepRecord> records(amplitudes.size());

    unsigned workers = options.threads ? options.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(amplitudes.size()));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < amplitudes.size(); i = next++) {
            records[i] = run_one(base, amplitudes[i], options);
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    return records;
}

ScalingFit scaling_fit(const std::vector<SweepRecord>& records, double theta) {
    std::vector<const SweepRecord*> usable;
    for (const auto& r : records) {
        if (r.ok() && r.blew_up && r.converged) usable.push_back(&r);
    }
    if (usable.size() < 3) {
        throw InputError("scaling_fit: need at least 3 converged blown-up records, have " +
                         std::to_string(usable.size()));
    }
    const auto n = static_cast<Eigen::Index>(usable.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd target(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = *usable[static_cast<std::size_t>(i)];
        design(i, 0) = std::pow(r.A, -(r.params.p - 1.0) / theta);
        design(i, 1) = 1.0;
        target(i) = r.log_T_num;
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(target);
    const Eigen::VectorXd residual = target - design * coef;
    const double ss_res = residual.squaredNorm();
    const double ss_tot = (target.array() - target.mean()).matrix().squaredNorm();

    ScalingFit fit;
    fit.slope = coef(0);
    fit.intercept = coef(1);
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.points = usable.size();
    return fit;
}

bool bound_consistent(const std::vector<SweepRecord>& records) {
    return std::all_of(records.begin(), records.end(), [](const SweepRecord& r) {
        return !(r.ok() && r.blew_up && r.converged) || r.margin >= 0.0;
    });
}

}  // namespace blowup
