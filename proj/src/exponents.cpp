#include "blowup/exponents.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

constexpr double kEqualityTol = 1e-12;

void require_finite(const ProblemParams& q) {
    const double fields[] = {q.a, q.b, q.c, q.x, q.y, q.z, q.p, q.A, q.B, q.R};
    const char* names[] = {"a", "b", "c", "x", "y", "z", "p", "A", "B", "R"};
    for (int i = 0; i < 10; ++i) {
        if (!std::isfinite(fields[i])) {
            throw InputError(std::string("parameter ") + names[i] + " is not finite");
        }
    }
}

}  // namespace

ProblemParams canonical_params(double p, double A, double B, double R) {
    return ProblemParams{1.0, 0.0, 1.0, -p, -p - 1.0, 1.0, p, A, B, R};
}

double theta(const ProblemParams& q) {
    return q.x + q.z + 1.0 + (q.c - q.b) * (q.p - 1.0);
}

ValidationReport validate(const ProblemParams& q, ValidationOptions options) {
    require_finite(q);
    ValidationReport report;
    auto fail = [&](std::string what) {
        report.pass = false;
        report.violations.push_back(std::move(what));
    };

    if (!(q.p > 1.0)) fail("p > 1");
    if (!(q.a <= 1.0)) fail("a <= 1");
    if (q.p > 1.0) {
        if (!(q.b >= std::max(0.0, q.x / (q.p - 1.0)))) fail("b >= max{0, x/(p-1)}");
    } else if (!(q.b >= 0.0)) {
        fail("b >= max{0, x/(p-1)}");
    }
    if (!(std::abs(q.y + q.p * q.a + 1.0) <= kEqualityTol)) fail("y + p*a = -1");
    if (!(q.z + q.c * q.p > -1.0)) fail("z + c*p > -1");
    if (!(q.z + q.c * q.p >= q.c - 1.0)) fail("z + c*p >= c - 1");
    if (!(q.A > 0.0)) fail("A > 0");
    if (options.allow_zero_coupling ? !(q.B >= 0.0) : !(q.B > 0.0)) fail("B > 0");
    if (!(q.R > 1.0)) fail("R > 1");

    if (report.pass) {
        // Consequences used by the frame recursion.
        assert(q.b - q.x / (q.p - 1.0) >= -kEqualityTol);
        assert(q.c + (q.z + 1.0) / (q.p - 1.0) >= -kEqualityTol);
        if (theta(q) <= 0.0) {
            report.warnings.push_back(
                "theta = x+z+1+(c-b)(p-1) <= 0: lifespan formula branch is degenerate");
        }
    }
    return report;
}

void require_valid(const ProblemParams& q, ValidationOptions options) {
    const auto report = validate(q, options);
    if (!report.pass) {
        throw InputError("invalid parameters: violated condition " + report.violations.front());
    }
}

double constant_C(const ProblemParams& q) {
    const double s = q.z + 1.0;
    return std::max(q.c + s / (q.p - 1.0), q.c + s / q.p) / q.B;
}

double constant_D(const ProblemParams& q) {
    const double pm1 = q.p - 1.0;
    const double two_exp = q.c + (q.p + (q.z + 1.0) * pm1) / (pm1 * pm1);
    return std::exp2(two_exp) * std::pow(q.p, q.p / (pm1 * pm1)) *
           std::pow(constant_C(q), 1.0 / pm1);
}

double constant_D_factored(const ProblemParams& q) {
    const double pm1 = q.p - 1.0;
    return std::exp2(q.c + (q.z + 1.0) / pm1) * std::pow(2.0 * q.p, q.p / (pm1 * pm1)) *
           std::pow(constant_C(q), 1.0 / pm1);
}

int r_infinity_terms(double tol) {
    if (!(tol > 0.0)) throw InputError("r_infinity: tol must be positive");
    // smallest K with 2^{-K} <= tol
    int K = static_cast<int>(std::ceil(-std::log2(tol)));
    if (K < 1) K = 1;
    while (std::exp2(-K) > tol) ++K;
    return K;
}

double r_infinity(double R, double tol) {
    const int K = r_infinity_terms(tol);
    if (!(R > 0.0) || !std::isfinite(R)) throw InputError("r_infinity: R must be positive");
    double product = R;
    for (int k = 1; k <= K; ++k) product *= 1.0 + std::exp2(-k);
    return product;
}

DerivedConstants derived_constants(const ProblemParams& q, double tol) {
    DerivedConstants out;
    out.C = constant_C(q);
    out.D = constant_D(q);
    out.theta = theta(q);
    out.r_infinity = r_infinity(q.R, tol);
    out.lifespan_exponent = out.theta == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                             : (q.p - 1.0) / out.theta;
    return out;
}

}  // namespace blowup
