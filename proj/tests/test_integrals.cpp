#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/integrals.hpp"

using namespace blowup;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

const LogProfile kOne = [](double) { return 0.0; };
const LogProfile kZero = [](double) { return kNegInf; };

// y = -1, z = 0, phi = 1, R = 1: I(t) = log t, J(t) = t log t - t + 1.
double inner_flat(double t) { return std::log(t); }
double outer_flat(double t) { return t * std::log(t) - t + 1.0; }
// y = -1, z = 1: I(t) = (log t)^2 / 2, J(t) = t ((log t)^2 - 2 log t + 2)/2 - 1.
double inner_linear(double t) { return 0.5 * std::log(t) * std::log(t); }
double outer_linear(double t) {
    const double l = std::log(t);
    return 0.5 * t * (l * l - 2.0 * l + 2.0) - 1.0;
}

MarchResult march_constant(double h, double sigma_max, double z) {
    const auto grid = make_grid(1.0, h, sigma_max);
    const std::vector<double> phi(static_cast<std::size_t>(grid.n_max), 1.0);
    return march(grid, phi, KernelExponents{-1.0, z, 2.0}, LocalModel{1.0, 0.0});
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("grid layout") {
    const auto g = make_grid(2.0, 0.25, 1.0);
    CHECK(g.n_max == 5);
    CHECK(g.sigma(0) == 0.0);
    CHECK(g.time(0) == 2.0);
    CHECK(g.time(4) == doctest::Approx(2.0 * std::exp(1.0)));
    const auto t = g.times();
    for (Eigen::Index k = 1; k < t.size(); ++k) CHECK(t(k) > t(k - 1));
    CHECK_THROWS_AS(make_grid(2.0, 0.0, 1.0), InputError);
    CHECK_THROWS_AS(make_grid(2.0, 0.1, 0.01), InputError);
    CHECK(make_grid(1.0, 1e-3, 1.0).n_max == 1001);
}

TEST_CASE("zero integrand gives zero accumulators") {
    const auto grid = make_grid(2.0, 1e-2, 3.0);
    const std::vector<double> phi(static_cast<std::size_t>(grid.n_max), 0.0);
    const auto r = march(grid, phi, KernelExponents{-3.0, 1.0, 2.0}, LocalModel{0.0, 1.0});
    CHECK(r.inner.abs().maxCoeff() == 0.0);
    CHECK(r.outer.abs().maxCoeff() == 0.0);
}

TEST_CASE("marching reproduces closed-form antiderivatives") {
    const double h = 1e-3;
    {
        const auto r = march_constant(h, 1.0, 0.0);  // t = e at the last node
        const auto n = r.outer.size() - 1;
        CHECK(rel_err(r.inner(n), inner_flat(std::exp(1.0))) <= 1e-6);
        CHECK(rel_err(r.outer(n), 1.0) <= 1e-6);
    }
    {
        const auto r = march_constant(h, 2.0, 1.0);  // t = e^2
        const auto n = r.outer.size() - 1;
        CHECK(rel_err(r.inner(n), 2.0) <= 1e-6);
        CHECK(rel_err(r.outer(n), outer_linear(std::exp(2.0))) <= 1e-6);
    }
}

TEST_CASE("marching is second order") {
    for (double z : {0.0, 1.0}) {
        const double sigma_max = 1.5;
        const double t = std::exp(sigma_max);
        const double exact = z == 0.0 ? outer_flat(t) : outer_linear(t);
        double prev = 0.0;
        for (double h : {4e-3, 2e-3, 1e-3}) {
            const auto r = march_constant(h, sigma_max, z);
            const double err = std::abs(r.outer(r.outer.size() - 1) - exact);
            if (prev > 0.0) {
                const double ratio = prev / err;
                CHECK(ratio > 3.6);
                CHECK(ratio < 4.4);
            }
            prev = err;
        }
        const double inner_exact = z == 0.0 ? inner_flat(t) : inner_linear(t);
        CHECK(march_constant(1e-3, sigma_max, z).inner.tail(1)(0) ==
              doctest::Approx(inner_exact).epsilon(1e-6));
    }
}

TEST_CASE("first cell") {
    const auto grid = make_grid(1.0, 1e-3, 1.0);
    CHECK(first_cell(grid, {-1.0, 0.0, 2.0}, {0.0, 0.0}) == 0.0);
    CHECK(first_cell(grid, {-1.0, 0.0, 2.0}, {1.0, 0.0}) == doctest::Approx(1e-3).epsilon(1e-14));

    // z + p c_loc = 3: the cell scales like h^4
    const KernelExponents flat{-1.0, 1.0, 2.0};
    const auto half = make_grid(1.0, 5e-4, 1.0);
    CHECK(first_cell(grid, flat, {1.0, 1.0}) / first_cell(half, flat, {1.0, 1.0}) ==
          doctest::Approx(16.0).epsilon(1e-12));
    const KernelExponents canonical{-3.0, 1.0, 2.0};
    CHECK(first_cell(make_grid(2.0, 1e-3, 1.0), canonical, {1.0, 1.0}) /
              first_cell(make_grid(2.0, 5e-4, 1.0), canonical, {1.0, 1.0}) ==
          doctest::Approx(16.0).epsilon(1e-3));

    CHECK_THROWS_AS(first_cell(grid, {-1.0, -1.0, 2.0}, {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(first_cell(grid, {-3.0, -3.0, 2.0}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(first_cell(grid, {-1.0, 0.0, 2.0}, {-1.0, 0.0}), DomainError);
}

TEST_CASE("first cell converges to the analytic cell value") {
    // R = 2, y = -3, z = -0.5, c_loc = 1, p = 2: integrand 2^{-2} e^{-2u} u^{1.5}
    const KernelExponents kernel{-3.0, -0.5, 2.0};
    const LocalModel model{1.7, 1.0};
    double prev = 1.0;
    for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const auto grid = make_grid(2.0, h, 1.0);
        const auto exact = adaptive_integrate(
            [&](double u) {
                return std::pow(model.kappa, 2.0) * 0.25 * std::exp(-2.0 * u) * std::pow(u, 1.5);
            },
            0.0, h, {.rel_tol = 1e-13});
        const double gap = std::abs(first_cell(grid, kernel, model) / exact.value - 1.0);
        // frozen-midpoint error is O(h)
        CHECK(gap < h);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("negative phi is rejected") {
    const auto grid = make_grid(1.0, 0.1, 1.0);
    std::vector<double> phi(static_cast<std::size_t>(grid.n_max), 1.0);
    phi[3] = -0.5;
    CHECK_THROWS_AS(march(grid, phi, {-1.0, 0.0, 2.0}, {1.0, 0.0}), InputError);
    phi[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(march(grid, phi, {-1.0, 0.0, 2.0}, {1.0, 0.0}), InputError);
}

TEST_CASE("accumulators are monotone for nonnegative phi") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    const auto grid = make_grid(1.5, 1e-2, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> phi(static_cast<std::size_t>(grid.n_max));
        for (auto& v : phi) v = u(rng) * (trial % 3 == 0 ? 0.0 : 1.0);
        const auto r = march(grid, phi, {-2.0, 0.5, 1.5}, {u(rng), 0.5});
        for (Eigen::Index k = 1; k < grid.n_max; ++k) {
            CHECK(r.inner(k) >= r.inner(k - 1));
            CHECK(r.outer(k) >= r.outer(k - 1));
        }
    }
}

TEST_CASE("oracle reproduces the closed forms") {
    const KernelExponents flat{-1.0, 0.0, 2.0};
    const KernelExponents linear{-1.0, 1.0, 2.0};
    const double e = std::exp(1.0);
    const double e2 = std::exp(2.0);

    const auto j_flat = double_integral_oracle(e, kOne, flat, 1.0, 1.0);
    CHECK(rel_err(j_flat.value, 1.0) <= 1e-8);
    CHECK(j_flat.error <= 1e-10);
    const auto j_linear = double_integral_oracle(e2, kOne, linear, 1.0, 1.0);
    CHECK(rel_err(j_linear.value, outer_linear(e2)) <= 1e-8);
    const auto i_linear = single_integral_oracle(e2, kOne, linear, 1.0, 1.0);
    CHECK(rel_err(i_linear.value, 2.0) <= 1e-8);

    // the marching grid at h = 1e-3 has 1001 nodes here
    const auto dense = double_integral_oracle(e, kOne, flat, 1.0, 1.0, {.min_nodes = 10010});
    CHECK(dense.nodes >= 10010);
    CHECK(rel_err(dense.value, 1.0) <= 1e-8);
}

TEST_CASE("oracle and march agree on a singular, non-constant profile") {
    // phi = forcing of the canonical tuple: A t log(t/R)
    const double A = 3.0;
    const double R = 2.0;
    const KernelExponents kernel{-3.0, 1.0, 2.0};
    auto run = [&](double h) {
        const auto grid = make_grid(R, h, 2.0);
        std::vector<double> phi(static_cast<std::size_t>(grid.n_max));
        for (Eigen::Index k = 0; k < grid.n_max; ++k) {
            phi[static_cast<std::size_t>(k)] = A * grid.time(k) * grid.sigma(k);
        }
        return march(grid, phi, kernel, LocalModel{A * R, 1.0}).outer;
    };
    const LogProfile profile = [&](double r) { return std::log(A * r * std::log(r / R)); };
    const auto coarse = run(1e-3);
    const auto fine = run(5e-4);
    for (double sigma : {0.2, 1.0, 2.0}) {
        const auto k = static_cast<Eigen::Index>(std::lround(sigma / 1e-3));
        const auto ref = double_integral_oracle(R * std::exp(sigma), profile, kernel, R, R);
        const double err_coarse = rel_err(coarse(k), ref.value);
        const double err_fine = rel_err(fine(2 * k), ref.value);
        // relative error scales like (h / sigma)^2 from the u^3 start
        CHECK(err_coarse < 5.0 * 1e-6 / (sigma * sigma));
        CHECK(err_coarse / err_fine == doctest::Approx(4.0).epsilon(0.1));
    }
}

TEST_CASE("oracle edge cases") {
    const KernelExponents flat{-1.0, 0.0, 2.0};
    const auto zero = double_integral_oracle(3.0, kZero, flat, 1.0, 1.0);
    CHECK(zero.value == 0.0);
    CHECK(zero.error == 0.0);

    double prev = 0.0;
    for (double t = 1.2; t < 20.0; t *= 1.4) {
        const double v = double_integral_oracle(t, kOne, {-2.0, -0.5, 2.0}, 1.0, 1.0).value;
        CHECK(v >= prev);
        prev = v;
    }

    // support starting above t contributes nothing
    CHECK(double_integral_oracle(3.0, kOne, flat, 1.0, 5.0).value == 0.0);
    CHECK_THROWS_AS(double_integral_oracle(0.5, kOne, flat, 1.0, 1.0), DomainError);

    // u^{-1.5} is not integrable at u = 0
    CHECK_THROWS_AS(double_integral_oracle(3.0, kOne, {-1.0, -1.5, 2.0}, 1.0, 1.0), OracleError);
    const LogProfile negative = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(double_integral_oracle(3.0, negative, flat, 1.0, 1.0), InputError);
}

TEST_CASE("adaptive quadrature") {
    const auto r = adaptive_integrate([](double x) { return std::sin(x); }, 0.0, 3.0);
    CHECK(r.value == doctest::Approx(1.0 - std::cos(3.0)).epsilon(1e-13));
    CHECK(r.error < 1e-11);
    const auto s = adaptive_integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                                      {.rel_tol = 1e-10});
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(adaptive_integrate([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
}
