#include "sos/roots.hpp"

#include <algorithm>
#include <cmath>

#include "sos/errors.hpp"

namespace sos {

void RootFindConfig::validate() const {
    if (!(scan_lo < scan_hi)) throw contract_error("scan window requires scan_lo < scan_hi");
    if (scan_points < 100) throw contract_error("scan_points must be >= 100");
    if (!(tol_x > 0.0) || !(tol_residual > 0.0)) throw contract_error("tolerances must be positive");
    if (max_iter < 1) throw contract_error("max_iter must be >= 1");
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol_x, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi))
        throw contract_error("bisect_root requires a sign change on the bracket");
    for (int it = 0; it < max_iter && hi - lo > tol_x; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // hit float resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> bracketed_roots(const std::function<double(double)>& residual,
                                    const RootFindConfig& cfg) {
    cfg.validate();
    const int n = cfg.scan_points;
    const double step = (cfg.scan_hi - cfg.scan_lo) / (n - 1);

    std::vector<double> xs(static_cast<std::size_t>(n));
    std::vector<double> fs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = cfg.scan_lo + i * step;
        fs[static_cast<std::size_t>(i)] = residual(xs[static_cast<std::size_t>(i)]);
    }

    auto near_zero = [&](int i) { return std::abs(fs[static_cast<std::size_t>(i)]) < cfg.tol_residual; };

    std::vector<double> found;
    // Grid nodes already at a root. A run of consecutive near-zero nodes
    // counts once; a node flanked by a sign change is refined on the wide
    // bracket, an isolated one (tangency) is kept as-is.
    for (int i = 0; i < n; ++i) {
        if (!near_zero(i)) continue;
        if (i > 0 && near_zero(i - 1)) continue;  // interior of a run
        int j = i;
        while (j + 1 < n && near_zero(j + 1)) ++j;
        if (i > 0 && j + 1 < n &&
            std::signbit(fs[static_cast<std::size_t>(i - 1)]) !=
                std::signbit(fs[static_cast<std::size_t>(j + 1)])) {
            found.push_back(bisect_root(residual, xs[static_cast<std::size_t>(i - 1)],
                                        xs[static_cast<std::size_t>(j + 1)], cfg.tol_x,
                                        cfg.max_iter));
        } else {
            found.push_back(0.5 * (xs[static_cast<std::size_t>(i)] + xs[static_cast<std::size_t>(j)]));
        }
    }
    // Sign changes between non-root nodes.
    for (int i = 0; i + 1 < n; ++i) {
        if (near_zero(i) || near_zero(i + 1)) continue;
        if (std::signbit(fs[static_cast<std::size_t>(i)]) ==
            std::signbit(fs[static_cast<std::size_t>(i + 1)]))
            continue;
        found.push_back(bisect_root(residual, xs[static_cast<std::size_t>(i)],
                                    xs[static_cast<std::size_t>(i + 1)], cfg.tol_x, cfg.max_iter));
    }

    std::sort(found.begin(), found.end());
    std::vector<double> out;
    const double merge_radius = 10.0 * cfg.tol_x;
    for (double r : found) {
        if (out.empty() || r - out.back() > merge_radius) out.push_back(r);
    }
    return out;
}

} // namespace sos
