#include "blowup/frames.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "blowup/errors.hpp"

namespace blowup {

std::string_view to_string(IndexMode mode) {
    return mode == IndexMode::Strict ? "strict" : "as-printed";
}

IndexMode parse_index_mode(std::string_view text) {
    if (text == "as-printed") return IndexMode::AsPrinted;
    if (text == "strict") return IndexMode::Strict;
    throw InputError("unknown index mode '" + std::string(text) +
                     "' (expected as-printed or strict)");
}

double slice_width(int j, IndexMode mode) {
    return std::exp2(mode == IndexMode::Strict ? -(j + 1) : -j);
}

Frame initial_frame(const ProblemParams& q, IndexMode mode) {
    Frame f;
    f.j = 0;
    f.log_amplitude = std::log(q.A);
    f.power = q.a;
    f.loglog_exponent = q.b;
    f.slicedlog_exponent = q.c;
    f.slice_radius = q.R;
    f.mode = mode;
    return f;
}

Frame advance(const Frame& f, const ProblemParams& q, IndexMode mode) {
    const double delta = slice_width(f.j, mode);
    Frame next;
    next.j = f.j + 1;
    next.power = f.power;
    next.loglog_exponent = q.p * f.loglog_exponent - q.x;
    next.slicedlog_exponent = q.p * f.slicedlog_exponent + q.z + 1.0;
    next.slice_radius = (1.0 + delta) * f.slice_radius;
    // log(delta/(1+delta)) = -log(1 + 1/delta)
    next.log_amplitude = q.p * f.log_amplitude + std::log(q.B) - std::log1p(1.0 / delta) -
                         std::log(next.slicedlog_exponent);
    next.mode = mode;
    next.amplitude_is_lower_bound = f.amplitude_is_lower_bound;
    return next;
}

std::vector<Frame> iterate_frames(const ProblemParams& q, IndexMode mode, int count) {
    std::vector<Frame> frames;
    if (count <= 0) return frames;
    frames.reserve(static_cast<std::size_t>(count));
    frames.push_back(initial_frame(q, mode));
    while (static_cast<int>(frames.size()) < count) {
        frames.push_back(advance(frames.back(), q, mode));
    }
    return frames;
}

Frame closed_form(int j, const ProblemParams& q, IndexMode mode) {
    if (j < 0) throw InputError("closed_form: j must be non-negative");
    const double pm1 = q.p - 1.0;
    const double pj = std::pow(q.p, j);
    const double xs = q.x / pm1;
    const double zs = (q.z + 1.0) / pm1;

    Frame f;
    f.j = j;
    f.power = q.a;
    f.mode = mode;
    f.amplitude_is_lower_bound = true;
    f.loglog_exponent = j == 0 ? q.b : pj * (q.b - xs) + xs;
    f.slicedlog_exponent = j == 0 ? q.c : pj * (q.c + zs) - zs;

    double radius = q.R;
    const int first = mode == IndexMode::Strict ? 1 : 0;
    for (int k = first; k < first + j; ++k) radius *= 1.0 + std::exp2(-k);
    f.slice_radius = radius;

    const double log_2p = std::log(2.0 * q.p);
    const double log_K = q.p / (pm1 * pm1) * log_2p + std::log(constant_C(q)) / pm1;
    f.log_amplitude = j == 0 ? std::log(q.A)
                             : pj * (std::log(q.A) - log_K) + j * log_2p / pm1 + log_K;
    return f;
}

double eval_log(const Frame& f, double t) {
    if (!(t > f.slice_radius) || !(t > 1.0)) {
        throw DomainError("eval_log: t = " + std::to_string(t) +
                          " is not above the slice radius " + std::to_string(f.slice_radius));
    }
    const double log_t = std::log(t);
    const double sliced = std::log(std::log(t / f.slice_radius));
    double value = f.log_amplitude + f.power * log_t;
    if (f.loglog_exponent != 0.0) value -= f.loglog_exponent * std::log(log_t);
    if (f.slicedlog_exponent != 0.0) value += f.slicedlog_exponent * sliced;
    return value;
}

double eval_log_extended(const Frame& f, double t) {
    if (t > f.slice_radius) return eval_log(f, t);
    if (t == f.slice_radius && f.slicedlog_exponent == 0.0 && t > 1.0) {
        const double log_t = std::log(t);
        return f.log_amplitude + f.power * log_t - f.loglog_exponent * std::log(log_t);
    }
    return -std::numeric_limits<double>::infinity();
}

double q_value_log(const ProblemParams& q, double log_T) {
    const double th = theta(q);
    if (th == 0.0) throw DegenerateExponentError("q_value: theta = 0");
    const double log_r_inf = std::log(r_infinity(q.R));
    if (!(log_T > 2.0 * log_r_inf)) {
        throw DomainError("q_value: criterion only applies for T > R_inf^2");
    }
    const double log_q =
        std::log(q.A) + th / (q.p - 1.0) * std::log(log_T) - std::log(constant_D_factored(q));
    return std::exp(log_q);
}

double q_value(const ProblemParams& q, double T) {
    if (!(T > 0.0)) throw DomainError("q_value: T must be positive");
    return q_value_log(q, std::log(T));
}

}  // namespace blowup
