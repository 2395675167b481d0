#include <doctest.h>

#include <cmath>
#include <random>

#include "sos/criticals.hpp"
#include "sos/errors.hpp"

#include "oracles.hpp"

using namespace sos;

TEST_CASE("zeta at one half is five halves") {
    // (1 + 1/4) / (2 * 1/4) = 5/2, exact in binary arithmetic.
    CHECK(zeta_of(0.5) == 2.5);
    CHECK(zeta_of(1.0) == 1.0);
    CHECK(zeta_of(2.0) == 0.625);
    CHECK_THROWS_AS(zeta_of(0.0), domain_error);
}

TEST_CASE("critical temperature closed form") {
    CHECK(theta_critical(2) == doctest::Approx(1.0 / std::sqrt(17.0)).epsilon(1e-15));
    CHECK(theta_critical(3) == doctest::Approx(2.0 / std::sqrt(28.0)).epsilon(1e-15));
    for (int d = 2; d < 40; ++d) {
        CHECK(theta_critical(d) < theta_critical(d + 1));
        CHECK(theta_critical(d) < 1.0);
        CHECK(theta_critical(d) > 0.0);
    }
    CHECK_THROWS_AS(theta_critical(1), domain_error);
    CHECK_THROWS_AS(theta_critical(0), domain_error);
}

TEST_CASE("zeta at the critical temperature hits the tangency value") {
    // At theta = theta_c(d) the quadratic has a double root, which happens
    // exactly when zeta = ((d + 1)/(d - 1))^2.
    for (int d = 2; d <= 50; ++d) {
        const double z = zeta_of(theta_critical(d));
        const double want = std::pow((d + 1.0) / (d - 1.0), 2);
        CHECK(oracle::close_rel(z, want, 1e-12));
        const double scale = std::max({1.0, z * z, 4.0 * z});
        CHECK(std::abs(discriminant(z, d)) <= 1e-12 * scale);
    }
}

TEST_CASE("expanded and factored discriminants agree") {
    std::mt19937 rng(20240910);
    for (int i = 0; i < 200; ++i) {
        const double zeta = oracle::uniform(rng, 1.0001, 40.0);
        const int d = oracle::uniform_int(rng, 2, 12);
        const double a = discriminant(zeta, d);
        const double b = discriminant_factored(zeta, d);
        CHECK(oracle::close_rel(a, b, 1e-10, 1e-9));
    }
}

TEST_CASE("quadratic roots satisfy the equation and the Vieta relations") {
    std::mt19937 rng(20240911);
    int checked = 0;
    while (checked < 100) {
        const double theta = oracle::uniform(rng, 0.01, 0.9);
        const int d = oracle::uniform_int(rng, 2, 10);
        const double zeta = zeta_of(theta);
        if (discriminant(zeta, d) <= 0.0) continue;
        ++checked;
        const auto [x1, x2] = quadratic_roots(zeta, d);
        CHECK(x1 <= x2);
        const double p = 2.0 - (zeta - 1.0) * (d - 1.0);
        for (double x : {x1, x2}) {
            const double residual = x * x + p * x + zeta;
            const double scale = std::max({1.0, x * x, std::abs(p * x), zeta});
            CHECK(std::abs(residual) <= 1e-12 * scale);
        }
        CHECK(oracle::close_rel(x1 * x2, zeta, 1e-12));
        CHECK(oracle::close_rel(x1 + x2, -p, 1e-10, 1e-10));
    }
}

TEST_CASE("negative discriminant raises a regime error") {
    // theta above theta_c(2) = 1/sqrt(17) leaves no real tangency pair.
    const double zeta = zeta_of(0.5);
    CHECK(discriminant(zeta, 2) < 0.0);
    CHECK_THROWS_AS(quadratic_roots(zeta, 2), regime_error);
    CHECK_THROWS_AS(eta_values(zeta, 2), regime_error);
}

TEST_CASE("eta pair is positive and ordered") {
    std::mt19937 rng(20240912);
    int checked = 0;
    while (checked < 50) {
        const double theta = oracle::uniform(rng, 0.01, 0.9);
        const int d = oracle::uniform_int(rng, 2, 8);
        const double zeta = zeta_of(theta);
        if (discriminant(zeta, d) <= 0.0) continue;
        ++checked;
        const auto [x1, x2] = quadratic_roots(zeta, d);
        const auto [eta1, eta2] = eta_values(zeta, d);
        CHECK(eta1 > 0.0);
        CHECK(eta1 < eta2);
        // Direct evaluation of (1/x)((1 + x)/(zeta + x))^d at both roots.
        const double at1 = std::pow((1.0 + x1) / (zeta + x1), d) / x1;
        const double at2 = std::pow((1.0 + x2) / (zeta + x2), d) / x2;
        CHECK(oracle::close_rel(std::min(at1, at2), eta1, 1e-12));
        CHECK(oracle::close_rel(std::max(at1, at2), eta2, 1e-12));
    }
}

TEST_CASE("the two prefactor conventions differ by exactly k over d") {
    const double theta = 0.05;
    const int k = 6;
    const int d = 2;
    const double h_star = -3.7;
    const auto by_k = c_star_bounds(theta, k, d, h_star, PrefactorConvention::KOverHStar);
    const auto by_d = c_star_bounds(theta, k, d, h_star, PrefactorConvention::DOverHStar);
    CHECK(by_k.c1 == doctest::Approx(by_d.c1 * k / d).epsilon(1e-14));
    CHECK(by_k.c2 == doctest::Approx(by_d.c2 * k / d).epsilon(1e-14));
    // Default convention is d/h*.
    const auto def = c_star_bounds(theta, k, d, h_star);
    CHECK(def.c1 == by_d.c1);
    CHECK(def.c2 == by_d.c2);
}

TEST_CASE("the c interval maps onto the eta interval") {
    const double theta = 0.05;
    const int k = 2;
    const int d = 2;
    const double h_star = 1.9;  // arbitrary positive scale
    const auto bounds = c_star_bounds(theta, k, d, h_star, PrefactorConvention::KOverHStar);
    CHECK(bounds.c1 < bounds.c2);
    CHECK_FALSE(bounds.order_flipped);
    const auto [eta1, eta2] = eta_values(zeta_of(theta), d);
    // eta(c) = 2 theta^{d+1} e^{-c h*/k} is decreasing in c, so the midpoint
    // of (c1, c2) must land strictly inside (eta1, eta2).
    const double mid = 0.5 * (bounds.c1 + bounds.c2);
    const double eta_mid = 2.0 * std::pow(theta, d + 1) * std::exp(-mid * h_star / k);
    CHECK(eta_mid > eta1);
    CHECK(eta_mid < eta2);
    // And the endpoints reproduce eta2 / eta1 respectively.
    const double eta_at_c1 = 2.0 * std::pow(theta, d + 1) * std::exp(-bounds.c1 * h_star / k);
    const double eta_at_c2 = 2.0 * std::pow(theta, d + 1) * std::exp(-bounds.c2 * h_star / k);
    CHECK(oracle::close_rel(eta_at_c1, eta2, 1e-10));
    CHECK(oracle::close_rel(eta_at_c2, eta1, 1e-10));

    // Negative h* flips the raw order; the sorted result records it.
    const auto flipped = c_star_bounds(theta, k, d, -h_star, PrefactorConvention::KOverHStar);
    CHECK(flipped.order_flipped);
    CHECK(flipped.c1 < flipped.c2);
}

TEST_CASE("degenerate and domain guards") {
    CHECK_THROWS_AS(c_star_bounds(0.05, 2, 2, 0.0), degenerate_error);
    CHECK_THROWS_AS(c_star_bounds(0.05, 2, 1, 1.0), domain_error);
    CHECK_THROWS_AS(discriminant(2.0, 1), domain_error);
    CHECK_THROWS_AS(c_star_bounds(0.5, 2, 2, 1.0), regime_error);
}

TEST_CASE("make_critical_set fills fields progressively") {
    // Above the critical temperature only the scalar diagnostics exist.
    const auto dry = make_critical_set(0.5, 2, 2, 1.0);
    CHECK(dry.theta_c == doctest::Approx(1.0 / std::sqrt(17.0)));
    CHECK(dry.discriminant_value < 0.0);
    CHECK_FALSE(dry.x1.has_value());
    CHECK_FALSE(dry.eta1.has_value());
    CHECK_FALSE(dry.c_star_1.has_value());

    // Below it the whole ladder is populated and ordered.
    const auto wet = make_critical_set(0.05, 2, 2, 1.9, PrefactorConvention::KOverHStar);
    CHECK(wet.discriminant_value > 0.0);
    REQUIRE(wet.x1.has_value());
    REQUIRE(wet.x2.has_value());
    REQUIRE(wet.eta1.has_value());
    REQUIRE(wet.eta2.has_value());
    REQUIRE(wet.c_star_1.has_value());
    REQUIRE(wet.c_star_2.has_value());
    CHECK(*wet.x1 < *wet.x2);
    CHECK(*wet.eta1 < *wet.eta2);
    CHECK(*wet.c_star_1 < *wet.c_star_2);
    CHECK(wet.convention == PrefactorConvention::KOverHStar);

    // h* = 0 keeps the eta ladder but cannot produce c* bounds.
    const auto flat = make_critical_set(0.05, 2, 2, 0.0);
    CHECK(flat.eta1.has_value());
    CHECK_FALSE(flat.c_star_1.has_value());
    CHECK_FALSE(flat.c_star_2.has_value());
}
