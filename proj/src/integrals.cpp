#include "blowup/integrals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "blowup/errors.hpp"

namespace blowup {

double LogGrid::time(Eigen::Index k) const { return R * std::exp(sigma(k)); }

Eigen::ArrayXd LogGrid::sigmas() const {
    return Eigen::ArrayXd::LinSpaced(n_max, 0.0, static_cast<double>(n_max - 1)) * h;
}

Eigen::ArrayXd LogGrid::times() const { return R * sigmas().exp(); }

LogGrid make_grid(double R, double h, double sigma_max) {
    if (!(R > 0.0) || !std::isfinite(R)) throw InputError("grid: R must be positive");
    if (!(h > 0.0) || !std::isfinite(h)) throw InputError("grid: h must be positive");
    if (!(sigma_max >= h) || !std::isfinite(sigma_max)) {
        throw InputError("grid: horizon must be at least one step");
    }
    LogGrid grid;
    grid.R = R;
    grid.h = h;
    grid.n_max = static_cast<Eigen::Index>(std::floor(sigma_max / h * (1.0 + 1e-12))) + 1;
    return grid;
}

double cell_integrand(const LogGrid& grid, const KernelExponents& kernel, double u, double phi) {
    if (phi == 0.0) return 0.0;
    double log_value = (kernel.y + 1.0) * (std::log(grid.R) + u) + kernel.p * std::log(phi);
    if (kernel.z != 0.0) log_value += kernel.z * std::log(u);
    return std::exp(log_value);
}

double first_cell(const LogGrid& grid, const KernelExponents& kernel, const LocalModel& model) {
    const double alpha = kernel.z + kernel.p * model.c_loc;
    if (!(alpha > -1.0)) {
        throw DomainError("first_cell: z + p*c_loc = " + std::to_string(alpha) +
                          " <= -1, the weight is not integrable at r = R");
    }
    if (!(model.kappa >= 0.0)) throw DomainError("first_cell: kappa must be non-negative");
    if (model.kappa == 0.0) return 0.0;
    const double log_value = kernel.p * std::log(model.kappa) +
                             (kernel.y + 1.0) * (std::log(grid.R) + 0.5 * grid.h) +
                             (alpha + 1.0) * std::log(grid.h) - std::log(alpha + 1.0);
    return std::exp(log_value);
}

namespace {

double checked_phi(std::span<const double> phi, Eigen::Index k) {
    const double v = phi[static_cast<std::size_t>(k)];
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InputError("march: phi at node " + std::to_string(k) +
                         " is negative or not finite");
    }
    return v;
}

}  // namespace

MarchState march_step(const MarchState& state, const LogGrid& grid, Eigen::Index k,
                      std::span<const double> phi, const KernelExponents& kernel,
                      const LocalModel& model) {
    if (k < 1) throw InputError("march_step: k must be at least 1");
    if (static_cast<Eigen::Index>(phi.size()) <= k) {
        throw InputError("march_step: phi must cover nodes 0..k");
    }
    const double h = grid.h;
    const double u0 = grid.sigma(k - 1);
    const double u1 = grid.sigma(k);

    MarchState next;
    if (k == 1) {
        next.inner = state.inner + first_cell(grid, kernel, model);
    } else {
        const double g0 = cell_integrand(grid, kernel, u0, checked_phi(phi, k - 1));
        const double g1 = cell_integrand(grid, kernel, u1, checked_phi(phi, k));
        next.inner = state.inner + 0.5 * h * (g0 + g1);
    }
    // ds = R e^u du
    next.outer = state.outer +
                 0.5 * h * grid.R * (state.inner * std::exp(u0) + next.inner * std::exp(u1));
    return next;
}

MarchResult march(const LogGrid& grid, std::span<const double> phi,
                  const KernelExponents& kernel, const LocalModel& model) {
    if (static_cast<Eigen::Index>(phi.size()) != grid.n_max) {
        throw InputError("march: phi must have one value per grid node");
    }
    MarchResult out;
    out.inner = Eigen::ArrayXd::Zero(grid.n_max);
    out.outer = Eigen::ArrayXd::Zero(grid.n_max);
    MarchState state;
    for (Eigen::Index k = 1; k < grid.n_max; ++k) {
        state = march_step(state, grid, k, phi, kernel, model);
        out.inner(k) = state.inner;
        out.outer(k) = state.outer;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kGaussPoints = 8;

struct GaussRule {
    std::array<double, kGaussPoints> nodes{};
    std::array<double, kGaussPoints> weights{};
};

// Legendre roots by Newton iteration from the Chebyshev guess.
GaussRule make_gauss_rule() {
    GaussRule rule;
    constexpr int n = kGaussPoints;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int m = 2; m <= n; ++m) {
                const double pm = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = pm;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussRule& gauss_rule() {
    static const GaussRule rule = make_gauss_rule();
    return rule;
}

struct Cell {
    double a;
    double b;
    double value;
    double error;
};

bool by_error(const Cell& lhs, const Cell& rhs) { return lhs.error < rhs.error; }

}  // namespace

OracleResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                const OracleOptions& options) {
    OracleResult result;
    if (!(b > a)) return result;
    const auto& rule = gauss_rule();

    auto panel = [&](double lo, double hi) {
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        double sum = 0.0;
        for (int i = 0; i < kGaussPoints; ++i) {
            const double v = f(mid + half * rule.nodes[static_cast<std::size_t>(i)]);
            if (std::isnan(v)) throw OracleError("oracle: integrand is NaN");
            sum += rule.weights[static_cast<std::size_t>(i)] * v;
        }
        result.nodes += kGaussPoints;
        return half * sum;
    };
    auto make_cell = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        const double coarse = panel(lo, hi);
        const double fine = panel(lo, mid) + panel(mid, hi);
        return Cell{lo, hi, fine, std::abs(fine - coarse)};
    };

    const std::size_t per_cell = 3 * kGaussPoints;
    const std::size_t initial =
        std::max<std::size_t>(16, (options.min_nodes + per_cell - 1) / per_cell);
    std::vector<Cell> heap;
    heap.reserve(initial * 4);
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i < initial; ++i) {
        const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(initial);
        const double hi =
            i + 1 == initial ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(initial);
        heap.push_back(make_cell(lo, hi));
        total += heap.back().value;
        error += heap.back().error;
    }
    std::make_heap(heap.begin(), heap.end(), by_error);

    std::size_t next_checkpoint = 512;
    double last_checkpoint_error = std::numeric_limits<double>::infinity();
    int stalled = 0;
    while (true) {
        if (!std::isfinite(total) || !std::isfinite(error)) {
            throw OracleError("oracle: integral is not finite");
        }
        const double tol = std::max(options.abs_tol, options.rel_tol * std::abs(total));
        if (error <= tol) break;
        if (heap.size() >= options.max_cells) {
            throw OracleError("oracle: cell budget exhausted with error estimate " +
                              std::to_string(error) + " above tolerance " + std::to_string(tol));
        }
        if (heap.size() >= next_checkpoint) {
            stalled = error > 0.99 * last_checkpoint_error ? stalled + 1 : 0;
            if (stalled >= 3) {
                throw OracleError("oracle: error estimate is not decreasing under refinement (" +
                                  std::to_string(error) + ")");
            }
            last_checkpoint_error = error;
            next_checkpoint *= 2;
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Cell worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw OracleError("oracle: cell width reached machine resolution");
        }
        const Cell left = make_cell(worst.a, mid);
        const Cell right = make_cell(mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
    }

    // Re-sum to drop the drift of the running totals.
    std::sort(heap.begin(), heap.end(), [](const Cell& l, const Cell& r) { return l.a < r.a; });
    result.value = 0.0;
    result.error = 0.0;
    for (const auto& cell : heap) {
        result.value += cell.value;
        result.error += cell.error;
    }
    result.cells = heap.size();
    return result;
}

namespace {

OracleResult weighted_oracle(double t, const LogProfile& log_phi, const KernelExponents& kernel,
                             double R, double support_start, const OracleOptions& options,
                             bool with_outer_kernel) {
    if (!(R > 0.0)) throw InputError("oracle: R must be positive");
    if (!(t > R)) throw DomainError("oracle: t must exceed R");
    const double r0 = std::max(R, support_start);
    if (!(t > r0)) return {};
    const double log_R = std::log(R);
    const double sigma = std::log(t / R);
    const double u_lo = std::log(r0 / R);
    const double shift = with_outer_kernel ? 2.0 : 1.0;

    auto integrand = [&](double u) {
        const double lp = log_phi(R * std::exp(u));
        if (std::isnan(lp)) throw InputError("oracle: phi is negative or NaN");
        if (lp == -std::numeric_limits<double>::infinity()) return 0.0;
        double log_value = (kernel.y + shift) * (log_R + u) + kernel.p * lp;
        if (kernel.z != 0.0) log_value += kernel.z * std::log(u);
        const double value = std::exp(log_value);
        // t - r = r (e^{sigma-u} - 1); the leading r is folded into the shift.
        return with_outer_kernel ? value * std::expm1(sigma - u) : value;
    };
    return adaptive_integrate(integrand, u_lo, sigma, options);
}

}  // namespace

OracleResult double_integral_oracle(double t, const LogProfile& log_phi,
                                    const KernelExponents& kernel, double R,
                                    double support_start, const OracleOptions& options) {
    return weighted_oracle(t, log_phi, kernel, R, support_start, options, true);
}

OracleResult double_integral_oracle(double t, const LogProfile& log_phi,
                                    const ProblemParams& params, const OracleOptions& options) {
    return weighted_oracle(t, log_phi, kernel_of(params), params.R, params.R, options, true);
}

OracleResult single_integral_oracle(double t, const LogProfile& log_phi,
                                    const KernelExponents& kernel, double R,
                                    double support_start, const OracleOptions& options) {
    return weighted_oracle(t, log_phi, kernel, R, support_start, options, false);
}

}  // namespace blowup
