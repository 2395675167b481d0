#include "sos/criticals.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "sos/errors.hpp"

namespace sos {

namespace {

void require_theta(double theta) {
    if (!std::isfinite(theta) || theta <= 0.0)
        throw domain_error("theta must be a positive finite real");
}

void require_d(int d) {
    if (d < 2) throw domain_error("d must be >= 2, got " + std::to_string(d));
}

void require_zeta(double zeta) {
    if (!std::isfinite(zeta) || zeta <= 0.0)
        throw domain_error("zeta must be a positive finite real");
}

double eta_at(double x, double zeta, int d) {
    return std::pow((1.0 + x) / (zeta + x), d) / x;
}

} // namespace

const char* to_string(PrefactorConvention convention) {
    return convention == PrefactorConvention::KOverHStar ? "k/h*" : "d/h*";
}

double zeta_of(double theta) {
    require_theta(theta);
    return (1.0 + theta * theta) / (2.0 * theta * theta);
}

double theta_critical(int d) {
    require_d(d);
    const double dd = d;
    return (dd - 1.0) / std::sqrt(dd * dd + 6.0 * dd + 1.0);
}

double discriminant(double zeta, int d) {
    require_zeta(zeta);
    require_d(d);
    const double p = 2.0 - (zeta - 1.0) * (d - 1.0);
    return p * p - 4.0 * zeta;
}

double discriminant_factored(double zeta, int d) {
    require_zeta(zeta);
    require_d(d);
    const double r = (d + 1.0) / (d - 1.0);
    return (zeta - 1.0) * (d - 1.0) * (d - 1.0) * (zeta - r * r);
}

QuadraticRoots quadratic_roots(double zeta, int d) {
    const double disc = discriminant(zeta, d);
    if (disc < 0.0)
        throw regime_error("negative discriminant: unique-solution regime, no critical pair");
    const double s = (zeta - 1.0) * (d - 1.0) - 2.0;  // x1 + x2
    const double sq = std::sqrt(disc);
    // Take the larger-magnitude root first, recover the other from the
    // product x1 * x2 = zeta to avoid cancellation.
    double r1;
    if (s >= 0.0) {
        r1 = 0.5 * (s + sq);
    } else {
        r1 = 0.5 * (s - sq);
    }
    const double r2 = (r1 != 0.0) ? zeta / r1 : 0.5 * (s - sq);
    return {std::min(r1, r2), std::max(r1, r2)};
}

EtaPair eta_values(double zeta, int d) {
    const auto [x1, x2] = quadratic_roots(zeta, d);
    if (x1 <= 0.0)
        throw regime_error("quadratic roots are not positive; eta values undefined here");
    const double e1 = eta_at(x1, zeta, d);
    const double e2 = eta_at(x2, zeta, d);
    return {std::min(e1, e2), std::max(e1, e2)};
}

CStarBounds c_star_bounds(double theta, int k, int d, double h_star,
                          PrefactorConvention convention) {
    require_theta(theta);
    require_d(d);
    if (k < 1) throw domain_error("k must be >= 1");
    if (!std::isfinite(h_star)) throw domain_error("h* must be finite");
    if (h_star == 0.0)
        throw degenerate_error("h* = 0: the critical field bounds are undefined");

    const auto etas = eta_values(zeta_of(theta), d);  // throws regime_error past theta_c
    const double front = (convention == PrefactorConvention::KOverHStar ? k : d) / h_star;
    const double base = std::numbers::ln2 + (d + 1) * std::log(theta);
    const double c1 = front * (base - std::log(etas.eta2));
    const double c2 = front * (base - std::log(etas.eta1));
    if (c1 <= c2) return {c1, c2, false};
    return {c2, c1, true};
}

CriticalSet make_critical_set(double theta, int k, int d, double h_star,
                              PrefactorConvention convention) {
    require_theta(theta);
    CriticalSet cs;
    cs.theta_c = theta_critical(d);
    cs.zeta = zeta_of(theta);
    cs.discriminant_value = discriminant(cs.zeta, d);
    cs.convention = convention;
    if (cs.discriminant_value < 0.0) return cs;

    const auto roots = quadratic_roots(cs.zeta, d);
    cs.x1 = roots.x1;
    cs.x2 = roots.x2;
    if (roots.x1 > 0.0) {
        const auto etas = eta_values(cs.zeta, d);
        cs.eta1 = etas.eta1;
        cs.eta2 = etas.eta2;
        if (h_star != 0.0) {
            const auto bounds = c_star_bounds(theta, k, d, h_star, convention);
            cs.c_star_1 = bounds.c1;
            cs.c_star_2 = bounds.c2;
            cs.c_star_order_flipped = bounds.order_flipped;
        }
    }
    return cs;
}

} // namespace sos
