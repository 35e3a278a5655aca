#pragma once

#include <string_view>

#include "blowup/exponents.hpp"
#include "blowup/frames.hpp"

namespace blowup {

enum class Branch {
    Product,  ///< 2 log R_sup dominates
    Formula,  ///< (D/A)^{(p-1)/theta} dominates
};

std::string_view to_string(Branch branch);

/// Upper bound on the existence time T:
///   log T <= max{2 log R_sup, (D/A)^{(p-1)/theta}}.
struct LifespanBound {
    double T_bound = 0.0;  ///< exp(log_T_bound); may be +inf when log_T_bound is huge
    double log_T_bound = 0.0;
    Branch branch = Branch::Formula;
    bool tie = false;
    double theta = 0.0;
    IndexMode mode = IndexMode::AsPrinted;
    double product_value = 0.0;  ///< 2 log R_sup
    double formula_value = 0.0;  ///< (D/A)^{(p-1)/theta}
    DerivedConstants constants;
};

/// Throws InputError for invalid parameters and DegenerateExponentError
/// when theta <= 0.
LifespanBound bound(const ProblemParams& params, IndexMode mode = IndexMode::AsPrinted);

/// Q evaluated at log T = (D/A)^{(p-1)/theta}. Equals 1 up to rounding; a
/// consistency check between C, D and the blow-up criterion.
double critical_time_identity(const ProblemParams& params);

/// (n+1)/(n-1)
double glassey_exponent(int n);

struct GlasseyBound {
    int n = 3;
    double p_G = 2.0;
    double eps_exponent = 1.0;  ///< log T_bound ~ eps^{-eps_exponent} on the formula branch
    ProblemParams params;
    LifespanBound bound;
};

/// Lifespan bound for the derivative-type tuple at p = p_G(n), with the
/// amplitude A = kappa * eps^m. Throws InputError for n < 2.
GlasseyBound glassey_bound(int n, double eps, double kappa = 1.0, double m = 1.0,
                           double B = 1.0, double R = 2.0,
                           IndexMode mode = IndexMode::AsPrinted);

}  // namespace blowup
