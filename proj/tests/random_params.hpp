#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "blowup/exponents.hpp"

namespace blowup::testing {

/// Draws exponent tuples that satisfy every admissibility condition.
class ParamGenerator {
public:
    explicit ParamGenerator(std::uint64_t seed) : rng_(seed) {}

    ProblemParams operator()() {
        ProblemParams q;
        q.p = uniform(1.1, 4.0);
        q.a = uniform(-1.0, 1.0);
        q.y = -1.0 - q.p * q.a;
        q.x = uniform(-3.0, 2.0);
        q.b = std::max(0.0, q.x / (q.p - 1.0)) + uniform(0.0, 2.0);
        q.c = uniform(0.0, 3.0);
        const double z_floor = std::max(-1.0 - q.c * q.p, q.c - 1.0 - q.c * q.p);
        q.z = z_floor + uniform(0.01, 3.0);
        q.A = uniform(1.0, 100.0);
        q.B = uniform(0.5, 3.0);
        q.R = uniform(1.1, 4.0);
        return q;
    }

    /// Valid tuple with theta > 0.
    ProblemParams positive_theta() {
        for (;;) {
            const auto q = (*this)();
            if (theta(q) > 0.05) return q;
        }
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace blowup::testing
