// Bracketing for monotone scalar equations.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

namespace jcctl::roots {

struct Bracket {
    double lo;
    double hi;
};

// For h increasing on [lo, ∞) with h(lo) < 0, doubles the upper end until
// h(hi) ≥ 0. Returns nullopt if no sign change appears within max_doublings.
template <typename Func>
std::optional<Bracket> expand_upward(Func h, double lo, double first_hi, std::size_t max_doublings = 200) {
    double hi = first_hi;
    for (std::size_t i = 0; i < max_doublings; ++i) {
        const double v = h(hi);
        if (!std::isfinite(v)) return std::nullopt;
        if (v >= 0.0) return Bracket{lo, hi};
        lo = hi;
        hi *= 2.0;
    }
    return std::nullopt;
}

// Bisection on a bracket with h(lo) < 0 ≤ h(hi). Stops when the bracket is
// narrower than rel_tol·|hi| or stops shrinking in floating point.
template <typename Func>
double bisect(Func h, Bracket b, double rel_tol = 1e-12, std::size_t max_iter = 200) {
    double lo = b.lo;
    double hi = b.hi;
    for (std::size_t i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (h(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= rel_tol * std::abs(hi)) break;
    }
    return std::abs(h(lo)) < std::abs(h(hi)) ? lo : hi;
}

}  // namespace jcctl::roots
