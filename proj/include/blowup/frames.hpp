#pragma once

#include <string_view>
#include <vector>

#include "blowup/exponents.hpp"

namespace blowup {

/// Which slice widths drive the iteration.
///
/// AsPrinted: the step j -> j+1 uses delta = 2^{-j} starting at j = 0, so
///   R_{j+1} = R prod_{k=0}^{j} (1 + 2^{-k}) and sup_j R_j = 2 R_inf.
/// Strict: the step j -> j+1 uses delta = 2^{-(j+1)}, so
///   R_{j+1} = R prod_{k=1}^{j+1} (1 + 2^{-k}) and sup_j R_j = R_inf.
enum class IndexMode { AsPrinted, Strict };

std::string_view to_string(IndexMode mode);
/// Accepts "as-printed" and "strict"; throws InputError otherwise.
IndexMode parse_index_mode(std::string_view text);

/// Slice width used by the step j -> j+1.
double slice_width(int j, IndexMode mode);

/// Lower bound A_j t^a (log t)^{-b_j} (log(t/R_j))^{c_j}, valid for t >= R_j.
/// The amplitude is only ever held as log A_j.
struct Frame {
    int j = 0;
    double log_amplitude = 0.0;
    double power = 1.0;               ///< a, constant in j
    double loglog_exponent = 0.0;     ///< b_j
    double slicedlog_exponent = 0.0;  ///< c_j
    double slice_radius = 0.0;        ///< R_j
    IndexMode mode = IndexMode::AsPrinted;
    /// True when log_amplitude is the closed-form lower bound rather than
    /// the exact recursion value.
    bool amplitude_is_lower_bound = false;
};

/// Default iteration cap.
inline constexpr int kDefaultFrameCap = 40;

Frame initial_frame(const ProblemParams& params, IndexMode mode = IndexMode::AsPrinted);

/// One step of the exact recursion:
///   b' = p b - x,  c' = p c + z + 1,  R' = (1 + delta) R,
///   log A' = p log A + log B - log(1 + 1/delta) - log c'.
Frame advance(const Frame& frame, const ProblemParams& params, IndexMode mode);

/// Frames 0..count-1 of the exact recursion.
std::vector<Frame> iterate_frames(const ProblemParams& params, IndexMode mode,
                                  int count = kDefaultFrameCap + 1);

/// Frame j from the closed forms
///   b_j = p^j (b - x/(p-1)) + x/(p-1),
///   c_j = p^j (c + (z+1)/(p-1)) - (z+1)/(p-1),
///   R_j = R prod (1 + delta_k),
/// with log A_j replaced by the lower bound
///   p^j log(A/K) + j log(2p)/(p-1) + log K,  K = (2p)^{p/(p-1)^2} C^{1/(p-1)}.
Frame closed_form(int j, const ProblemParams& params, IndexMode mode);

/// log of the frame value at t. Throws DomainError for t <= R_j or t <= 1.
/// Returns -inf as t approaches R_j from above when c_j > 0.
double eval_log(const Frame& frame, double t);

/// Like eval_log, but extends the frame by zero below its slice radius
/// (returns -inf there, or the boundary value when c_j == 0).
double eval_log_extended(const Frame& frame, double t);

/// Blow-up criterion
///   Q(T) = A (log T)^{theta/(p-1)} / (2^{c+(z+1)/(p-1)} (2p)^{p/(p-1)^2} C^{1/(p-1)}),
/// defined for T > R_inf^2. Q > 1 certifies that no solution survives to T.
double q_value(const ProblemParams& params, double T);

/// q_value taking log T, usable when T itself overflows.
double q_value_log(const ProblemParams& params, double log_T);

}  // namespace blowup
