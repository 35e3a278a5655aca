#include "blowup/lifespan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blowup/errors.hpp"

namespace blowup {

std::string_view to_string(Branch branch) {
    return branch == Branch::Product ? "product" : "formula";
}

namespace {

constexpr double kTieTol = 1e-12;

void require_positive_theta(const ProblemParams& q) {
    const double th = theta(q);
    if (!(th > 0.0)) {
        throw DegenerateExponentError("theta = x+z+1+(c-b)(p-1) = " + std::to_string(th) +
                                      " <= 0: the lifespan exponent is degenerate "
                                      "(see the validate warning)");
    }
}

double formula_log_T(const ProblemParams& q, double D) {
    return std::exp((q.p - 1.0) / theta(q) * (std::log(D) - std::log(q.A)));
}

}  // namespace

LifespanBound bound(const ProblemParams& q, IndexMode mode) {
    require_valid(q);
    require_positive_theta(q);

    LifespanBound out;
    out.mode = mode;
    out.constants = derived_constants(q);
    out.theta = out.constants.theta;
    // Both readings share the same supremum in the bound: the printed
    // formula uses R_inf, and strict frames accumulate exactly to R_inf.
    const double r_sup = out.constants.r_infinity;
    out.product_value = 2.0 * std::log(r_sup);
    out.formula_value = formula_log_T(q, out.constants.D);

    const double scale = std::max(std::abs(out.product_value), std::abs(out.formula_value));
    if (std::abs(out.formula_value - out.product_value) <= kTieTol * scale) {
        out.tie = true;
        out.branch = Branch::Formula;
    } else {
        out.branch = out.formula_value > out.product_value ? Branch::Formula : Branch::Product;
    }
    out.log_T_bound = std::max(out.product_value, out.formula_value);
    out.T_bound = std::exp(out.log_T_bound);
    return out;
}

double critical_time_identity(const ProblemParams& q) {
    require_positive_theta(q);
    return q_value_log(q, formula_log_T(q, constant_D(q)));
}

double glassey_exponent(int n) {
    if (n < 2) throw InputError("glassey_exponent: n must be at least 2");
    return static_cast<double>(n + 1) / static_cast<double>(n - 1);
}

GlasseyBound glassey_bound(int n, double eps, double kappa, double m, double B, double R,
                           IndexMode mode) {
    if (n < 2) {
        throw InputError("glassey_bound: n must be at least 2 (no critical case for n = 1)");
    }
    if (!(eps > 0.0) || !(kappa > 0.0)) {
        throw InputError("glassey_bound: eps and kappa must be positive");
    }
    GlasseyBound out;
    out.n = n;
    out.p_G = glassey_exponent(n);
    out.params = canonical_params(out.p_G, kappa * std::pow(eps, m), B, R);
    out.eps_exponent = m * (out.p_G - 1.0) / theta(out.params);
    out.bound = bound(out.params, mode);
    return out;
}

}  // namespace blowup
