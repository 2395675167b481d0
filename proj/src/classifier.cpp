#include "sos/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sos/errors.hpp"

namespace sos {

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Unique: return "UNIQUE";
        case Regime::BoundaryPair: return "BOUNDARY_PAIR";
        default: return "TRIPLE";
    }
}

const char* to_string(FamilyTag t) {
    switch (t) {
        case FamilyTag::TranslationInvariant: return "translation-invariant";
        case FamilyTag::Periodic: return "periodic";
        default: return "nonperiodic-new";
    }
}

int count_N(double theta, double c, int d, double h_star, std::optional<double> k,
            double boundary_tol) {
    if (!std::isfinite(theta) || theta <= 0.0) throw domain_error("theta must be positive");
    if (theta >= 1.0)
        throw regime_error("trichotomy applies to theta < 1 only");
    if (d < 2) throw domain_error("trichotomy requires d >= 2");
    if (!std::isfinite(c)) throw domain_error("c must be finite");
    if (!std::isfinite(h_star)) throw domain_error("h* must be finite");
    if (h_star == 0.0)
        throw degenerate_error("h* = 0: the critical interval degenerates");
    const double kk = k.value_or(c + d);
    if (!std::isfinite(kk) || kk <= 0.0) throw domain_error("k must be positive");
    if (!std::isfinite(boundary_tol) || boundary_tol < 0.0)
        throw domain_error("boundary_tol must be >= 0");

    const double zeta = zeta_of(theta);
    if (discriminant(zeta, d) <= 0.0) return 1;

    const auto eta = eta_values(zeta, d);
    const double front = kk / h_star;
    const double base = std::numbers::ln2 + (d + 1) * std::log(theta);
    double c1 = front * (base - std::log(eta.eta2));
    double c2 = front * (base - std::log(eta.eta1));
    if (c1 > c2) std::swap(c1, c2);

    const double band1 = boundary_tol * std::max(1.0, std::abs(c1));
    const double band2 = boundary_tol * std::max(1.0, std::abs(c2));
    if (std::abs(c - c1) <= band1 || std::abs(c - c2) <= band2) return 2;
    if (c > c1 && c < c2) return 3;
    return 1;
}

FamilyTag family_tag_for(const BranchPattern& pattern, const ReducedField& root, double tol) {
    if (std::abs(root.h2 - root.l2) <= tol) return FamilyTag::TranslationInvariant;
    if (pattern.a == 0 && pattern.d == 0) return FamilyTag::Periodic;
    return FamilyTag::NonperiodicNew;
}

RegimeReport classify_point(const BranchPattern& pattern, const ModelParams& params,
                            const RootFindConfig& cfg) {
    pattern.require_consistent(params);
    RegimeReport rep;

    if (pattern.b == 0) {
        rep.solutions = solve_b_zero(params, pattern.c, cfg);
        const double h_star = rep.solutions.h_star;
        if (params.theta >= 1.0) {
            rep.n_solutions_predicted = 1;
            rep.theorem_applied = "monotone chain, theta >= 1: unique solution";
        } else if (pattern.d < 2) {
            rep.n_solutions_predicted = 1;
            rep.theorem_applied = "contraction, d <= 1: unique solution";
        } else if (h_star == 0.0) {
            rep.n_solutions_predicted = 1;
            rep.theorem_applied = "degenerate h* = 0: chain reduces to the symmetric point";
        } else {
            rep.n_solutions_predicted =
                count_N(params.theta, pattern.c, pattern.d, h_star,
                        static_cast<double>(params.k));
            rep.theorem_applied = "critical-interval trichotomy for the b = 0 chain";
            rep.criticals = make_critical_set(params.theta, params.k, pattern.d, h_star,
                                              PrefactorConvention::KOverHStar);
        }
    } else {
        rep.solutions = solve_b_nonzero(pattern, params, cfg);
        bool any_unstable = false;
        bool any_marginal = false;
        for (auto s : rep.solutions.stability) {
            any_unstable = any_unstable || s == Stability::Unstable;
            any_marginal = any_marginal || s == Stability::Marginal;
        }
        if (any_unstable) {
            rep.n_solutions_predicted = 3;
            rep.theorem_applied =
                "instability criterion: |psi'| > 1 at a fixed point forces two more";
        } else if (any_marginal) {
            rep.n_solutions_predicted = 2;
            rep.theorem_applied = "marginal fixed point: boundary of the instability regime";
        } else {
            rep.n_solutions_predicted = 1;
            rep.theorem_applied = "existence only: psi is bounded and continuous";
        }
    }

    rep.n_solutions_found = static_cast<int>(rep.solutions.size());
    switch (rep.n_solutions_predicted) {
        case 1: rep.regime = Regime::Unique; break;
        case 2: rep.regime = Regime::BoundaryPair; break;
        default: rep.regime = Regime::Triple; break;
    }
    rep.family_tags.reserve(rep.solutions.size());
    for (const auto& r : rep.solutions.roots)
        rep.family_tags.push_back(family_tag_for(pattern, r));
    return rep;
}

Th1Check check_th1_condition(const BranchPattern& pattern, const ModelParams& params,
                             double h2_star, double residual_tol) {
    const double resid = std::abs(h2_star - psi_of(h2_star, pattern, params));
    if (resid > residual_tol)
        throw contract_error("h2* is not a fixed point of psi: residual " +
                             std::to_string(resid));
    Th1Check out;
    out.value = std::abs(psi_derivative(h2_star, pattern, params));
    out.satisfied = out.value > 1.0;
    return out;
}

} // namespace sos
