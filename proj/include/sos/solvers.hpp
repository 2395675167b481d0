#pragma once

#include <string>
#include <vector>

#include "sos/model.hpp"
#include "sos/roots.hpp"

namespace sos {

// |derivative| within kStabilityBand of 1 is reported as Marginal rather
// than forced to one side.
inline constexpr double kStabilityBand = 1e-9;

enum class Stability { Stable, Unstable, Marginal };

const char* to_string(Stability s);

Stability classify_stability(double derivative_magnitude, double band = kStabilityBand);

// Common result shape for all fixed-point solvers. Scalar equations report
// their solutions as (h2, l2) pairs through the natural lift of each mode.
struct SolutionReport {
    std::vector<ReducedField> roots;
    std::vector<double> residuals;     // sup-norm of the defining system at each root
    std::vector<double> derivatives;   // scalar iteration derivative at each root
    std::vector<Stability> stability;
    std::vector<std::string> labels;   // per-root annotation (family or sub-case)
    std::string regime_note;

    // b = 0 chain extras; untouched by the other solvers.
    double h_star = 0.0;
    bool has_h_star = false;
    int cross_check_count = -1;        // root count of the transformed form eta*x = g(x)
    int positive_l2_count = -1;        // how many roots have l2 > 0

    std::size_t size() const { return roots.size(); }
};

// Elimination of l2 from the reduced system when b != 0:
//   phi(h2) = (1/b) ((b c - a d) f(h2) + d h2), the induced l2 value,
//   psi(h2) = a f(h2) + b f(phi(h2)), whose fixed points solve the system.
double phi_of(double h2, const BranchPattern& pattern, const ModelParams& params);
double psi_of(double h2, const BranchPattern& pattern, const ModelParams& params);

// psi'(h2) = a f'(h2) + ((b c - a d) f'(h2) + d) f'(phi(h2)).
double psi_derivative(double h2, const BranchPattern& pattern, const ModelParams& params);

// g(x) = ((1 + x) / (zeta + x))^d on x >= 0; the b = 0 chain transforms into
// eta * x = g(x) under x = e^{l2} / (2 theta).
double g_of(double x, double zeta, int d);

// g'(x) = g(x) d (zeta - 1) / ((zeta + x)(1 + x)).
double g_derivative(double x, double zeta, int d);

// Inflection of g at x0 = (zeta (d - 1) - (d + 1)) / 2.
double g_inflection(double zeta, int d);

// A copy of cfg whose window is guaranteed to contain every fixed point of
// the bounded maps at these parameters; `shift` widens it further for chains
// with an additive offset.
RootFindConfig widened_config(const ModelParams& params, const RootFindConfig& cfg,
                              double shift = 0.0);

// Translation-invariant equation h = k f(h). Roots are lifted as (h, h);
// derivative column holds k f'(h).
SolutionReport solve_ti(const ModelParams& params, const RootFindConfig& cfg);

// Two-periodic system h2 = G(l2), l2 = G(h2) with G = k f, solved through
// h2 = G(G(h2)). Roots with h2 == l2 (within 1e-9) are labelled
// "translation-invariant", the rest "periodic". Derivative column holds (G o G)'.
SolutionReport solve_periodic(const ModelParams& params, const RootFindConfig& cfg);

// Reduced two-field system for b != 0 via the psi elimination. Roots are
// (h2, phi(h2)); derivative column holds psi'. If an unstable root is found
// with fewer than three roots in total, regime_note carries a window warning.
SolutionReport solve_b_nonzero(const BranchPattern& pattern, const ModelParams& params,
                               const RootFindConfig& cfg);

// b = 0 chain: solve h = k f(h) first, pick one root h* (middle of three by
// default, else the smallest; h_root_index selects explicitly), then solve
//   l2 = d f(l2) + c h*/k  with d = k - c.
// Roots are (h*, l2); derivative column holds d f'(l2). The report carries
// h*, the transformed-form root count and the number of roots with l2 > 0.
SolutionReport solve_b_zero(const ModelParams& params, int c, const RootFindConfig& cfg,
                            int h_root_index = -1);

// Pattern family a = c + 2, d = b + 2. Dispatches to the b != 0 or b = 0
// path; every root is labelled "known-subcase" when it satisfies both
// h2 = 2 f(h2) and l2 = 2 f(l2) (within 1e-8), else "new-measure".
SolutionReport solve_non_ti_23(const BranchPattern& pattern, const ModelParams& params,
                               const RootFindConfig& cfg);

} // namespace sos
