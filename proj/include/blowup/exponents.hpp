#pragma once

#include <string>
#include <vector>

namespace blowup {

/// Exponents and constants of the integral inequality system
///
///   H(t) >= A t^a (log t)^{-b} (log(t/R))^c
///   H(t) >= B (log t)^x int_R^t ds int_R^s r^y (log(r/R))^z |H(r)|^p dr
///
/// on [R, T).
struct ProblemParams {
    double a = 1.0;
    double b = 0.0;
    double c = 1.0;
    double x = -2.0;
    double y = -3.0;
    double z = 1.0;
    double p = 2.0;
    double A = 100.0;  ///< forcing amplitude
    double B = 1.0;    ///< coupling
    double R = 2.0;    ///< base time, R > 1

    bool operator==(const ProblemParams&) const = default;
};

/// The derivative-nonlinearity tuple a=1, b=0, c=1, x=-p, y=-p-1, z=1.
ProblemParams canonical_params(double p, double A = 100.0, double B = 1.0, double R = 2.0);

/// x + z + 1 + (c - b)(p - 1), the denominator of the lifespan exponent.
double theta(const ProblemParams& params);

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
};

struct ValidationOptions {
    /// Accept B == 0. Only used to switch the feedback term off in tests.
    bool allow_zero_coupling = false;
};

/// Checks every admissibility condition on the exponents and constants.
/// A non-positive theta is reported as a warning, not a failure.
/// Throws InputError when a field is not finite.
ValidationReport validate(const ProblemParams& params, ValidationOptions options = {});

/// Throws InputError naming the first violated condition.
void require_valid(const ProblemParams& params, ValidationOptions options = {});

/// (1/B) max{c + (z+1)/(p-1), c + (z+1)/p}
double constant_C(const ProblemParams& params);

/// D in the printed form 2^{c + (p + (z+1)(p-1))/(p-1)^2} p^{p/(p-1)^2} C^{1/(p-1)}.
double constant_D(const ProblemParams& params);

/// D in the factored form 2^{c + (z+1)/(p-1)} (2p)^{p/(p-1)^2} C^{1/(p-1)},
/// which is the denominator of the blow-up criterion.
double constant_D_factored(const ProblemParams& params);

/// Truncation of R prod_{k>=1} (1 + 2^{-k}) after K factors, with K the
/// smallest integer such that 2^{-K} <= tol. Never exceeds the infinite
/// product and is within relative error tol of it.
double r_infinity(double R, double tol = 1e-12);

/// Number of factors used by r_infinity for a given tolerance.
int r_infinity_terms(double tol);

struct DerivedConstants {
    double C = 0.0;
    double D = 0.0;
    double theta = 0.0;
    double r_infinity = 0.0;
    double lifespan_exponent = 0.0;  ///< (p-1)/theta, NaN when theta == 0
};

DerivedConstants derived_constants(const ProblemParams& params, double tol = 1e-12);

}  // namespace blowup
