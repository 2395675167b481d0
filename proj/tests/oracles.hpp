#pragma once

// Independent numerical checks used by the tests. Everything here works from
// mathematical definitions only and never calls the library's own derivative
// formulas or bracketing root finder, so agreement is meaningful.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

namespace oracle {

// O(h^2) central difference for the first derivative. The step balances
// truncation (h^2) against subtraction rounding (eps |f| / h) for functions
// of order-one scale.
inline double central_diff(const std::function<double(double)>& f, double x,
                           double h = 1e-5) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Second derivative via Richardson extrapolation of the three-point stencil,
// which cancels the leading O(h^2) truncation term. The stencil divides by
// h^2, so rounding noise forces a larger step than for central_diff.
inline double second_diff(const std::function<double(double)>& f, double x,
                          double h = 6e-3) {
    auto stencil = [&](double hh) {
        return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh);
    };
    return (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0;
}

// Root count seen by a dense scan: strict sign changes between consecutive
// grid nodes, with a contiguous near-zero run counted as one root.
// Deliberately simpler than the library's bracketing logic.
inline int dense_root_count(const std::function<double(double)>& f, double lo, double hi,
                            long points, double eps = 1e-12) {
    int count = 0;
    int last_sign = 0;
    bool in_run = false;
    for (long i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * (static_cast<double>(i) / (points - 1));
        const double v = f(x);
        if (std::abs(v) <= eps) {
            if (!in_run) {
                ++count;
                in_run = true;
            }
            last_sign = 0;
            continue;
        }
        in_run = false;
        const int s = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) ++count;
        last_sign = s;
    }
    return count;
}

// Deterministic uniform draw built directly on the mt19937 output stream,
// which the standard pins down exactly (distribution adaptors do not).
inline double uniform(std::mt19937& rng, double lo, double hi) {
    const double u = std::ldexp(static_cast<double>(rng()), -32);  // [0, 1)
    return lo + (hi - lo) * u;
}

inline int uniform_int(std::mt19937& rng, int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(rng() % static_cast<std::uint32_t>(hi - lo + 1));
}

// |got - want| <= tol * max(|want|, |got|, floor): relative away from zero,
// absolute inside the floor.
inline bool close_rel(double got, double want, double tol, double floor_ = 1e-12) {
    return std::abs(got - want) <=
           tol * std::max({std::abs(want), std::abs(got), floor_});
}

} // namespace oracle
