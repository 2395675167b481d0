#include "sos/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sos/criticals.hpp"
#include "sos/errors.hpp"

namespace sos {

namespace {

void require_m2(const ModelParams& params, const char* what) {
    if (params.m != 2) throw contract_error(std::string(what) + " is defined for m = 2 only");
}

void require_b_nonzero(const BranchPattern& pattern) {
    if (pattern.b == 0) throw contract_error("this reduction requires b != 0");
}

// Sup-norm residual of the reduced two-field system at (h2, l2).
double system_residual(const ReducedField& r, const BranchPattern& pattern,
                       const ModelParams& params) {
    const ReducedField w = reduced_rhs(r, pattern, params);
    return std::max(std::abs(r.h2 - w.h2), std::abs(r.l2 - w.l2));
}

constexpr double kPairTol = 1e-9;     // h2 == l2 detection
constexpr double kSubcaseTol = 1e-8;  // h = 2 f(h) detection

} // namespace

const char* to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::Unstable: return "unstable";
        default: return "marginal";
    }
}

Stability classify_stability(double derivative_magnitude, double band) {
    if (derivative_magnitude > 1.0 + band) return Stability::Unstable;
    if (derivative_magnitude < 1.0 - band) return Stability::Stable;
    return Stability::Marginal;
}

double phi_of(double h2, const BranchPattern& pattern, const ModelParams& params) {
    require_m2(params, "phi");
    pattern.require_consistent(params);
    require_b_nonzero(pattern);
    const double cross = pattern.b * pattern.c - pattern.a * pattern.d;
    return (cross * kernel_f(h2, params.theta) + pattern.d * h2) / pattern.b;
}

double psi_of(double h2, const BranchPattern& pattern, const ModelParams& params) {
    const double l2 = phi_of(h2, pattern, params);
    return pattern.a * kernel_f(h2, params.theta) + pattern.b * kernel_f(l2, params.theta);
}

double psi_derivative(double h2, const BranchPattern& pattern, const ModelParams& params) {
    const double l2 = phi_of(h2, pattern, params);
    const double cross = pattern.b * pattern.c - pattern.a * pattern.d;
    const double fp_h = kernel_f_derivative(h2, params.theta);
    const double fp_l = kernel_f_derivative(l2, params.theta);
    return pattern.a * fp_h + (cross * fp_h + pattern.d) * fp_l;
}

double g_of(double x, double zeta, int d) {
    if (!std::isfinite(x) || x < 0.0) throw domain_error("g is defined on x >= 0");
    if (!std::isfinite(zeta) || zeta <= 0.0) throw domain_error("zeta must be positive");
    if (d < 0) throw domain_error("d must be >= 0");
    return std::pow((1.0 + x) / (zeta + x), d);
}

double g_derivative(double x, double zeta, int d) {
    const double g = g_of(x, zeta, d);
    return g * d * (zeta - 1.0) / ((zeta + x) * (1.0 + x));
}

double g_inflection(double zeta, int d) {
    if (!std::isfinite(zeta) || zeta <= 0.0) throw domain_error("zeta must be positive");
    if (d < 2) throw domain_error("d must be >= 2");
    return 0.5 * (zeta * (d - 1.0) - (d + 1.0));
}

RootFindConfig widened_config(const ModelParams& params, const RootFindConfig& cfg,
                              double shift) {
    const auto [lo_f, hi_f] = kernel_f_bounds(params.theta);
    const double reach =
        params.k * std::max(std::abs(lo_f), std::abs(hi_f)) + std::abs(shift) + 1.0;
    RootFindConfig out = cfg;
    out.scan_lo = std::min(cfg.scan_lo, -reach);
    out.scan_hi = std::max(cfg.scan_hi, reach);
    const double stretch = (out.scan_hi - out.scan_lo) / (cfg.scan_hi - cfg.scan_lo);
    if (stretch > 1.0)
        out.scan_points = static_cast<int>(std::ceil(cfg.scan_points * stretch));
    return out;
}

SolutionReport solve_ti(const ModelParams& params, const RootFindConfig& cfg) {
    require_m2(params, "solve_ti");
    const double theta = params.theta;
    const int k = params.k;
    auto residual = [&](double h) { return h - k * kernel_f(h, theta); };
    const auto roots = bracketed_roots(residual, cfg);
    if (roots.empty())
        throw scan_error("no fixed point of h = k f(h) in the scan window; widen it");

    SolutionReport rep;
    for (double h : roots) {
        const double deriv = std::abs(k * kernel_f_derivative(h, theta));
        rep.roots.push_back({h, h});
        rep.residuals.push_back(std::abs(residual(h)));
        rep.derivatives.push_back(deriv);
        rep.stability.push_back(classify_stability(deriv));
        rep.labels.emplace_back("translation-invariant");
    }
    return rep;
}

SolutionReport solve_periodic(const ModelParams& params, const RootFindConfig& cfg) {
    require_m2(params, "solve_periodic");
    const double theta = params.theta;
    const int k = params.k;
    auto G = [&](double h) { return k * kernel_f(h, theta); };
    auto residual = [&](double h2) { return h2 - G(G(h2)); };
    const auto roots = bracketed_roots(residual, cfg);
    if (roots.empty())
        throw scan_error("no fixed point of h = G(G(h)) in the scan window; widen it");

    SolutionReport rep;
    for (double h2 : roots) {
        const double l2 = G(h2);
        const double deriv =
            std::abs(k * kernel_f_derivative(l2, theta) * k * kernel_f_derivative(h2, theta));
        rep.roots.push_back({h2, l2});
        rep.residuals.push_back(std::max(std::abs(h2 - G(l2)), std::abs(l2 - G(h2))));
        rep.derivatives.push_back(deriv);
        rep.stability.push_back(classify_stability(deriv));
        rep.labels.emplace_back(std::abs(h2 - l2) <= kPairTol ? "translation-invariant"
                                                              : "periodic");
    }
    return rep;
}

SolutionReport solve_b_nonzero(const BranchPattern& pattern, const ModelParams& params,
                               const RootFindConfig& cfg) {
    require_m2(params, "solve_b_nonzero");
    pattern.require_consistent(params);
    require_b_nonzero(pattern);
    auto residual = [&](double h2) { return h2 - psi_of(h2, pattern, params); };
    const auto roots = bracketed_roots(residual, cfg);
    if (roots.empty())
        throw scan_error("psi is bounded and continuous, so a fixed point exists; widen the scan window");

    SolutionReport rep;
    bool any_unstable = false;
    for (double h2 : roots) {
        const ReducedField r{h2, phi_of(h2, pattern, params)};
        const double deriv = std::abs(psi_derivative(h2, pattern, params));
        rep.roots.push_back(r);
        rep.residuals.push_back(system_residual(r, pattern, params));
        rep.derivatives.push_back(deriv);
        rep.stability.push_back(classify_stability(deriv));
        rep.labels.emplace_back();
        any_unstable = any_unstable || rep.stability.back() == Stability::Unstable;
    }
    if (any_unstable && rep.size() < 3)
        rep.regime_note =
            "unstable fixed point with fewer than three roots found: widen the scan window";
    return rep;
}

SolutionReport solve_b_zero(const ModelParams& params, int c, const RootFindConfig& cfg,
                            int h_root_index) {
    require_m2(params, "solve_b_zero");
    if (c < 0 || c > params.k)
        throw contract_error("b = 0 chain requires 0 <= c <= k");
    const int d = params.k - c;
    const double theta = params.theta;

    const auto ti = solve_ti(params, cfg);
    int idx = h_root_index;
    if (idx < 0) idx = (ti.size() == 3) ? 1 : 0;
    if (idx >= static_cast<int>(ti.size()))
        throw contract_error("h-root index " + std::to_string(idx) + " out of range: " +
                             std::to_string(ti.size()) + " roots found");
    const double h_star = ti.roots[static_cast<std::size_t>(idx)].h2;
    const double shift = c * h_star / params.k;

    auto residual = [&](double l2) { return l2 - d * kernel_f(l2, theta) - shift; };
    const auto roots = bracketed_roots(residual, cfg);
    if (roots.empty())
        throw scan_error("no root of the b = 0 chain in the scan window; widen it");

    SolutionReport rep;
    rep.h_star = h_star;
    rep.has_h_star = true;
    rep.positive_l2_count = 0;
    const double fh = kernel_f(h_star, theta);
    for (double l2 : roots) {
        const double deriv = std::abs(d * kernel_f_derivative(l2, theta));
        rep.roots.push_back({h_star, l2});
        rep.residuals.push_back(std::max(std::abs(h_star - params.k * fh),
                                         std::abs(l2 - d * kernel_f(l2, theta) - c * fh)));
        rep.derivatives.push_back(deriv);
        rep.stability.push_back(classify_stability(deriv));
        rep.labels.emplace_back();
        if (l2 > 0.0) ++rep.positive_l2_count;
    }

    // Independent count through the transformed form eta * x = g(x) with
    // x = e^{l2} / (2 theta), compared in log coordinates.
    const double zeta = zeta_of(theta);
    const double log_eta = std::numbers::ln2 + (d + 1) * std::log(theta) - shift;
    const double log_2theta = std::log(2.0 * theta);
    auto transformed = [&](double l2) {
        const double x = std::exp(l2) / (2.0 * theta);
        return log_eta + (l2 - log_2theta) - d * (std::log1p(x) - std::log(zeta + x));
    };
    rep.cross_check_count = static_cast<int>(bracketed_roots(transformed, cfg).size());
    if (rep.cross_check_count != static_cast<int>(rep.size()))
        rep.regime_note = "transformed-form cross-check found " +
                          std::to_string(rep.cross_check_count) + " roots vs " +
                          std::to_string(rep.size());
    return rep;
}

SolutionReport solve_non_ti_23(const BranchPattern& pattern, const ModelParams& params,
                               const RootFindConfig& cfg) {
    require_m2(params, "solve_non_ti_23");
    pattern.require_consistent(params);
    if (pattern.a != pattern.c + 2 || pattern.d != pattern.b + 2)
        throw contract_error("this family requires a = c + 2 and d = b + 2");

    SolutionReport rep;
    if (pattern.b != 0) {
        rep = solve_b_nonzero(pattern, params, cfg);
    } else {
        // b = 0 forces (a,b,c,d) = (k, 0, k-2, 2); gather the chain solutions
        // over every h branch.
        const auto ti = solve_ti(params, cfg);
        for (int idx = 0; idx < static_cast<int>(ti.size()); ++idx) {
            const auto sub = solve_b_zero(params, pattern.c, cfg, idx);
            for (std::size_t i = 0; i < sub.size(); ++i) {
                rep.roots.push_back(sub.roots[i]);
                rep.residuals.push_back(sub.residuals[i]);
                rep.derivatives.push_back(sub.derivatives[i]);
                rep.stability.push_back(sub.stability[i]);
                rep.labels.emplace_back();
            }
        }
    }

    const double theta = params.theta;
    for (std::size_t i = 0; i < rep.size(); ++i) {
        const auto& r = rep.roots[i];
        const bool sub_h = std::abs(r.h2 - 2.0 * kernel_f(r.h2, theta)) <= kSubcaseTol;
        const bool sub_l = std::abs(r.l2 - 2.0 * kernel_f(r.l2, theta)) <= kSubcaseTol;
        rep.labels[i] = (sub_h && sub_l) ? "known-subcase" : "new-measure";
    }
    return rep;
}

} // namespace sos
