#pragma once

#include <stdexcept>
#include <string>

namespace hallq {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic on a non-invertible element.
struct division_error : error {
    using error::error;
};

// A Hall-number query outside the shapes the backend computes exactly.
// Carries the offending pair so callers can report a counterexample.
struct unsupported_shape : error {
    using error::error;
};

// A windowed computation detected (via class bookkeeping) that terms
// outside the window would contribute to the requested result.
struct window_insufficient : error {
    using error::error;
};

// series_to_rational could not lock a recurrence of the allowed order.
struct no_recurrence : error {
    int best_residual_pos;
    no_recurrence(const std::string& msg, int pos)
        : error(msg), best_residual_pos(pos) {}
};

struct backend_mismatch : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

} // namespace hallq
