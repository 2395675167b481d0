#pragma once

#include <functional>
#include <vector>

namespace sos {

// Controls the scan-and-bisect root finder. The default window [-40, 40]
// contains every fixed point of the bounded recursion maps for
// theta in [0.01, 100] and k <= 8; widen it for more extreme parameters.
struct RootFindConfig {
    double scan_lo = -40.0;
    double scan_hi = 40.0;
    int scan_points = 2001;
    double tol_x = 1e-13;
    double tol_residual = 1e-10;
    int max_iter = 200;

    // Throws contract_error unless scan_lo < scan_hi, scan_points >= 100
    // and all tolerances are positive.
    void validate() const;
};

// Bisection on a bracket with a sign change; returns the midpoint of the
// final interval of width <= tol_x. Throws contract_error if f(lo) and
// f(hi) have the same sign.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol_x, int max_iter = 200);

// All roots of `residual` inside the scan window: evaluates the grid, brackets
// every sign change, bisects each bracket, and keeps grid nodes whose value is
// already below tol_residual (tangencies). Roots closer than 10 * tol_x are
// merged. Result is sorted ascending; empty when no sign structure is found.
std::vector<double> bracketed_roots(const std::function<double(double)>& residual,
                                    const RootFindConfig& cfg);

} // namespace sos
