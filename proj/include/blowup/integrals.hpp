#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <span>

#include "blowup/exponents.hpp"

namespace blowup {

/// Uniform grid in sigma = log(t/R): sigma_k = k h, t_k = R e^{sigma_k}.
struct LogGrid {
    double R = 2.0;
    double h = 1e-3;
    Eigen::Index n_max = 0;  ///< node count, nodes 0..n_max-1

    double sigma(Eigen::Index k) const { return static_cast<double>(k) * h; }
    double time(Eigen::Index k) const;
    Eigen::ArrayXd sigmas() const;
    Eigen::ArrayXd times() const;
};

/// Grid covering [0, sigma_max]. Throws InputError unless R > 0, h > 0 and
/// sigma_max >= h.
LogGrid make_grid(double R, double h, double sigma_max);

/// Exponents of the weight r^y (log(r/R))^z |phi(r)|^p.
struct KernelExponents {
    double y = -3.0;
    double z = 1.0;
    double p = 2.0;
};

inline KernelExponents kernel_of(const ProblemParams& q) { return {q.y, q.z, q.p}; }

/// phi(r) ~ kappa (log(r/R))^{c_loc} as r -> R+.
struct LocalModel {
    double kappa = 0.0;
    double c_loc = 0.0;
};

/// I_k ~ int_R^{t_k} r^y (log(r/R))^z phi^p dr and J_k ~ int_R^{t_k} I(s) ds.
struct MarchState {
    double inner = 0.0;
    double outer = 0.0;
};

/// Inner integrand in sigma coordinates (dr = R e^u du):
/// R^{y+1} e^{(y+1)u} u^z phi^p.
double cell_integrand(const LogGrid& grid, const KernelExponents& kernel, double u, double phi);

/// Closed form of the inner integral over u in [0, h] under the local model,
/// with e^{(y+1)u} frozen at u = h/2:
///   kappa^p R^{y+1} e^{(y+1)h/2} h^{z + p c_loc + 1} / (z + p c_loc + 1).
/// Throws DomainError when z + p c_loc <= -1 or kappa < 0.
double first_cell(const LogGrid& grid, const KernelExponents& kernel, const LocalModel& model);

/// Advances the accumulators from node k-1 to node k. phi holds the values at
/// nodes 0..k (at least k+1 entries); only phi[k-1] and phi[k] are read for
/// k >= 2, and the first cell uses the local model instead of phi.
/// Throws InputError when a used phi value is negative or not finite.
MarchState march_step(const MarchState& state, const LogGrid& grid, Eigen::Index k,
                      std::span<const double> phi, const KernelExponents& kernel,
                      const LocalModel& model);

struct MarchResult {
    Eigen::ArrayXd inner;
    Eigen::ArrayXd outer;
};

/// Runs march_step over the whole grid. phi must have grid.n_max entries.
MarchResult march(const LogGrid& grid, std::span<const double> phi,
                  const KernelExponents& kernel, const LocalModel& model);

// ---------------------------------------------------------------------------
// Reference quadrature

struct OracleOptions {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    /// Lower bound on the number of integrand evaluations.
    std::size_t min_nodes = 0;
    std::size_t max_cells = std::size_t{1} << 18;
};

struct OracleResult {
    double value = 0.0;
    double error = 0.0;  ///< estimated absolute error
    std::size_t nodes = 0;
    std::size_t cells = 0;
};

/// log phi(r); returns -inf where phi vanishes.
using LogProfile = std::function<double(double r)>;

/// Globally adaptive Gauss-Legendre quadrature of f over [a, b]. Each cell
/// carries the difference between its one-panel and two-panel values as its
/// error estimate; the worst cell is bisected until the summed estimate
/// meets the tolerance. Throws OracleError when the estimate stalls or the
/// cell budget runs out.
OracleResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                const OracleOptions& options = {});

/// int_R^t ds int_R^s r^y (log(r/R))^z phi(r)^p dr, evaluated independently
/// of the marching scheme through the single integral
///   int_{r0}^t (t - r) r^y (log(r/R))^z phi(r)^p dr,
/// where phi vanishes below r0 = support_start (>= R).
OracleResult double_integral_oracle(double t, const LogProfile& log_phi,
                                    const KernelExponents& kernel, double R,
                                    double support_start, const OracleOptions& options = {});

OracleResult double_integral_oracle(double t, const LogProfile& log_phi,
                                    const ProblemParams& params,
                                    const OracleOptions& options = {});

/// int_R^t r^y (log(r/R))^z phi(r)^p dr with the same machinery.
OracleResult single_integral_oracle(double t, const LogProfile& log_phi,
                                    const KernelExponents& kernel, double R,
                                    double support_start, const OracleOptions& options = {});

}  // namespace blowup
