#pragma once

#include <optional>

namespace sos {

// The critical field bounds c*_1, c*_2 appear in the literature with two
// different prefactors (k/h* and d/h*) that disagree by the factor k/d.
// Both are implemented; callers pick one explicitly.
enum class PrefactorConvention { KOverHStar, DOverHStar };

const char* to_string(PrefactorConvention convention);

// zeta(theta) = (1 + theta^2) / (2 theta^2); zeta > 1 iff theta < 1.
double zeta_of(double theta);

// theta_c(d) = (d - 1) / sqrt(d^2 + 6 d + 1) for d >= 2. Strictly increasing
// in d and always < 1. At theta = theta_c the discriminant below vanishes.
double theta_critical(int d);

// Discriminant of x^2 + [2 - (zeta - 1)(d - 1)] x + zeta, expanded form.
double discriminant(double zeta, int d);

// Same quantity in the factorised form
// (zeta - 1)(d - 1)^2 (zeta - ((d + 1)/(d - 1))^2); used as an algebraic cross-check.
double discriminant_factored(double zeta, int d);

// Roots x1 <= x2 of the quadratic above. Throws regime_error when the
// discriminant is negative (unique-solution regime, no critical pair).
struct QuadraticRoots {
    double x1 = 0.0;
    double x2 = 0.0;
};
QuadraticRoots quadratic_roots(double zeta, int d);

// eta_i = (1/x_i) ((1 + x_i) / (zeta + x_i))^d evaluated at the two quadratic
// roots, returned with eta1 <= eta2.
struct EtaPair {
    double eta1 = 0.0;
    double eta2 = 0.0;
};
EtaPair eta_values(double zeta, int d);

// Critical bounds of the field parameter c for the b = 0 chain:
//   c*_1 = (K/h*) ln(2 theta^{d+1} / eta2),  c*_2 = (K/h*) ln(2 theta^{d+1} / eta1)
// with K = k or K = d by convention. Returned sorted ascending; order_flipped
// records that h* < 0 reversed the natural order.
struct CStarBounds {
    double c1 = 0.0;
    double c2 = 0.0;
    bool order_flipped = false;
};
CStarBounds c_star_bounds(double theta, int k, int d, double h_star,
                          PrefactorConvention convention = PrefactorConvention::DOverHStar);

// Everything the b = 0 analysis derives from (theta, k, d, h*). The optional
// members are absent in the unique-solution regime (discriminant < 0).
struct CriticalSet {
    double theta_c = 0.0;
    double zeta = 0.0;
    double discriminant_value = 0.0;
    std::optional<double> x1, x2;
    std::optional<double> eta1, eta2;
    std::optional<double> c_star_1, c_star_2;
    PrefactorConvention convention = PrefactorConvention::DOverHStar;
    bool c_star_order_flipped = false;
};
CriticalSet make_critical_set(double theta, int k, int d, double h_star,
                              PrefactorConvention convention = PrefactorConvention::DOverHStar);

} // namespace sos
