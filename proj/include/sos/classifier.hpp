#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sos/criticals.hpp"
#include "sos/model.hpp"
#include "sos/solvers.hpp"

namespace sos {

enum class Regime { Unique, BoundaryPair, Triple };
enum class FamilyTag { TranslationInvariant, Periodic, NonperiodicNew };

const char* to_string(Regime r);
const char* to_string(FamilyTag t);

// Trichotomy of the b = 0 chain at theta < 1: the number of solutions is
//   1  when the discriminant is negative (theta >= theta_c) or c lies outside
//      the closed critical interval,
//   2  when c sits on a critical bound (within boundary_tol, relative),
//   3  when c lies strictly inside.
// c is accepted as a real parameter; k defaults to c + d when not given.
// Uses the k/h* prefactor internally, the one consistent with the transformed
// form eta = 2 theta^{d+1} exp(-c h*/k). Throws regime_error for theta >= 1,
// degenerate_error for h* = 0, domain_error for d < 2.
int count_N(double theta, double c, int d, double h_star,
            std::optional<double> k = std::nullopt, double boundary_tol = 1e-9);

// Family of the measure a root generates: equal fields are translation
// invariant; an unequal pair under a = d = 0 alternates between levels;
// anything else is a new non-periodic measure.
FamilyTag family_tag_for(const BranchPattern& pattern, const ReducedField& root,
                         double tol = 1e-9);

struct RegimeReport {
    Regime regime = Regime::Unique;
    int n_solutions_predicted = 0;
    int n_solutions_found = 0;
    std::string theorem_applied;
    std::optional<CriticalSet> criticals;  // present on the b = 0 path with theta < 1, d >= 2
    std::vector<FamilyTag> family_tags;    // one per solution
    SolutionReport solutions;
};

// Full classification at one parameter point: runs the matching solver,
// derives the predicted count (trichotomy for b = 0, the |psi'| > 1
// instability test for b != 0), and tags each solution's family.
// Invariant: n_solutions_found >= n_solutions_predicted away from the
// boundary tolerance bands.
RegimeReport classify_point(const BranchPattern& pattern, const ModelParams& params,
                            const RootFindConfig& cfg);

// Verifies that h2_star is a fixed point of psi (residual <= residual_tol,
// else contract_error) and evaluates the instability condition |psi'| > 1.
struct Th1Check {
    bool satisfied = false;
    double value = 0.0;  // |psi'(h2*)|
};
Th1Check check_th1_condition(const BranchPattern& pattern, const ModelParams& params,
                             double h2_star, double residual_tol = 1e-8);

} // namespace sos
