#include <doctest.h>

#include <cmath>
#include <limits>

#include "blowup/errors.hpp"
#include "blowup/exponents.hpp"
#include "random_params.hpp"

using namespace blowup;
using blowup::testing::ParamGenerator;

namespace {

// R prod_{k>=1} (1 + 2^{-k}) to 40 digits, computed with arbitrary precision.
constexpr double kRinf1 = 2.384231029031371724149899288678397238772;

bool mentions(const ValidationReport& report, const std::string& what) {
    for (const auto& v : report.violations) {
        if (v == what) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("canonical tuple is admissible") {
    const auto q = canonical_params(2.0);
    CHECK(q.x == -2.0);
    CHECK(q.y == -3.0);
    const auto report = validate(q);
    CHECK(report.pass);
    CHECK(report.violations.empty());
    CHECK(report.warnings.empty());
}

TEST_CASE("violated conditions are named") {
    auto q = canonical_params(2.0);
    q.b = -1.0;
    auto report = validate(q);
    CHECK_FALSE(report.pass);
    CHECK(mentions(report, "b >= max{0, x/(p-1)}"));
    CHECK_THROWS_AS(require_valid(q), InputError);

    q = canonical_params(2.0);
    q.y = -2.0;
    report = validate(q);
    CHECK_FALSE(report.pass);
    CHECK(mentions(report, "y + p*a = -1"));

    q = canonical_params(2.0);
    q.p = 1.0;
    CHECK(mentions(validate(q), "p > 1"));

    q = canonical_params(2.0);
    q.z = -3.5;  // z + cp = -1.5
    report = validate(q);
    CHECK(mentions(report, "z + c*p > -1"));

    q = canonical_params(2.0);
    q.R = 1.0;
    CHECK(mentions(validate(q), "R > 1"));
    q = canonical_params(2.0);
    q.B = 0.0;
    CHECK(mentions(validate(q), "B > 0"));
    CHECK(validate(q, {.allow_zero_coupling = true}).pass);
}

TEST_CASE("y + pa = -1 is checked to 1e-12") {
    auto q = canonical_params(2.0);
    q.y = -3.0 + 5e-13;
    CHECK(validate(q).pass);
    q.y = -3.0 + 5e-12;
    CHECK_FALSE(validate(q).pass);
}

TEST_CASE("non-finite input is an input error") {
    auto q = canonical_params(2.0);
    q.z = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate(q), InputError);
    q = canonical_params(2.0);
    q.A = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(q), InputError);
}

TEST_CASE("theta warning fires exactly when theta <= 0") {
    // theta = -3 + 1 + 1 + 1 = 0
    ProblemParams q{1.0, 0.0, 1.0, -3.0, -3.0, 1.0, 2.0, 100.0, 1.0, 2.0};
    auto report = validate(q);
    CHECK(report.pass);
    CHECK(report.warnings.size() == 1);

    ParamGenerator gen(11);
    for (int i = 0; i < 500; ++i) {
        const auto r = gen();
        const auto rep = validate(r);
        REQUIRE(rep.pass);
        CHECK((rep.warnings.size() == 1) == (theta(r) <= 0.0));
        // coefficients the frame closed forms rely on
        CHECK(r.b - r.x / (r.p - 1.0) >= 0.0);
        CHECK(r.c + (r.z + 1.0) / (r.p - 1.0) >= 0.0);
    }
}

TEST_CASE("constant C") {
    CHECK(constant_C(canonical_params(2.0)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(constant_C(canonical_params(2.0, 100.0, 3.0)) == doctest::Approx(1.0).epsilon(1e-15));
    for (double p : {1.3, 2.0, 3.7}) {
        auto q = canonical_params(p);
        q.z = -1.0;
        q.c = 2.0;
        REQUIRE(validate(q).pass);
        CHECK(constant_C(q) == doctest::Approx(2.0).epsilon(1e-15));
    }
}

TEST_CASE("constant D, printed and factored") {
    CHECK(constant_D(canonical_params(2.0)) == doctest::Approx(384.0).epsilon(1e-14));
    CHECK(constant_D(canonical_params(2.0, 100.0, 3.0)) == doctest::Approx(128.0).epsilon(1e-14));
    CHECK(constant_D_factored(canonical_params(2.0)) == doctest::Approx(384.0).epsilon(1e-14));

    ParamGenerator gen(5);
    for (int i = 0; i < 5; ++i) {
        const auto q = gen();
        const double printed = constant_D(q);
        const double factored = constant_D_factored(q);
        CHECK(printed > 0.0);
        CHECK(std::abs(printed - factored) <= 1e-12 * printed);
    }
}

TEST_CASE("r_infinity truncation") {
    CHECK(r_infinity_terms(1e-12) == 40);
    const double r1 = r_infinity(1.0, 1e-12);
    CHECK(std::abs(r1 - kRinf1) <= 1e-12 * kRinf1);
    CHECK(r1 <= kRinf1);
    CHECK(std::abs(r_infinity(2.0, 1e-12) - 2.0 * kRinf1) <= 1e-12 * 2.0 * kRinf1);
    CHECK(r_infinity(2.0, 0.5) <= r_infinity(2.0, 1e-12));
    CHECK(r_infinity(2.0, 1e-3) <= r_infinity(2.0, 1e-6));
    CHECK_THROWS_AS(r_infinity(2.0, 0.0), InputError);
    CHECK_THROWS_AS(r_infinity(2.0, -1.0), InputError);
    // bit-reproducible for a fixed tolerance
    CHECK(r_infinity(3.0, 1e-9) == r_infinity(3.0, 1e-9));
}

TEST_CASE("derived constants") {
    const auto d = derived_constants(canonical_params(2.0));
    CHECK(d.C == doctest::Approx(3.0));
    CHECK(d.D == doctest::Approx(384.0));
    CHECK(d.theta == 1.0);
    CHECK(d.lifespan_exponent == 1.0);
    CHECK(d.r_infinity > 2.0);

    ParamGenerator gen(17);
    for (int i = 0; i < 50; ++i) {
        const auto q = gen();
        const auto c = derived_constants(q);
        CHECK(c.C > 0.0);
        CHECK(c.D > 0.0);
        CHECK(c.r_infinity > q.R);
    }
}
