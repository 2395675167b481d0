#include <doctest.h>

#include <cmath>
#include <random>

#include "sos/errors.hpp"
#include "sos/model.hpp"

#include "oracles.hpp"

using namespace sos;

TEST_CASE("kernel vanishes identically when theta equals one") {
    // At theta = 1 numerator and denominator of the kernel coincide.
    CHECK(kernel_f(17.3, 1.0) == 0.0);
    CHECK(kernel_f(-17.3, 1.0) == 0.0);
    CHECK(kernel_f(0.0, 1.0) == 0.0);
    CHECK(kernel_f_derivative(2.0, 1.0) == 0.0);
    CHECK(kernel_f_second(2.0, 1.0) == 0.0);
}

TEST_CASE("kernel limits match the closed forms at the window edges") {
    // For x -> +inf the kernel tends to ln(1/theta); corrections are O(e^-x)
    // and invisible in double precision at x = 60.
    CHECK(kernel_f(60.0, 2.0) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
    // For x -> -inf it tends to ln(2 theta / (theta^2 + 1)) = ln(4/5).
    CHECK(kernel_f(-60.0, 2.0) == doctest::Approx(std::log(0.8)).epsilon(1e-14));
    // Log-sum-exp keeps extreme arguments finite. At x = 700 the spacing of
    // doubles (~1.1e-13) limits the difference of the two logs, so the match
    // is ulp-bound rather than exact.
    CHECK(std::isfinite(kernel_f(700.0, 2.0)));
    CHECK(std::isfinite(kernel_f(-700.0, 0.1)));
    CHECK(kernel_f(700.0, 2.0) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("kernel derivative at zero for theta = 2 is the exact rational -3/35") {
    // f'(0) = -(theta^2 - 1) / ((1 + 2 theta)(theta^2 + theta + 1)) = -3/35.
    CHECK(kernel_f_derivative(0.0, 2.0) == doctest::Approx(-3.0 / 35.0).epsilon(1e-15));
}

TEST_CASE("derivative sign follows the side of theta = 1") {
    for (double x : {-7.0, -0.3, 0.0, 2.2, 11.0}) {
        CHECK(kernel_f_derivative(x, 0.4) > 0.0);
        CHECK(kernel_f_derivative(x, 3.1) < 0.0);
    }
}

TEST_CASE("kernel stays strictly inside its bounds") {
    for (double theta : {0.05, 0.3, 2.5, 14.0}) {
        const auto [lo, hi] = kernel_f_bounds(theta);
        CHECK(lo < hi);
        for (double x = -30.0; x <= 30.0; x += 0.37) {
            const double v = kernel_f(x, theta);
            CHECK(v > lo);
            CHECK(v < hi);
        }
    }
    // theta > 1 pins the whole envelope below zero. For theta < 1 the
    // envelope straddles zero: the x -> +inf limit -ln(theta) is positive,
    // while the x -> -inf limit ln(2 theta / (1 + theta^2)) is negative for
    // every theta != 1 because (1 - theta)^2 > 0.
    CHECK(kernel_f_bounds(2.5).second < 0.0);
    CHECK(kernel_f_bounds(0.3).first < 0.0);
    CHECK(kernel_f_bounds(0.3).second > 0.0);
    CHECK(kernel_f(0.0, 0.3) > 0.0);
}

TEST_CASE("derivative matches an independent central difference") {
    std::mt19937 rng(20240901);
    for (int i = 0; i < 100; ++i) {
        const double x = oracle::uniform(rng, -20.0, 20.0);
        const double theta = oracle::uniform(rng, 0.05, 20.0);
        const double fd =
            oracle::central_diff([&](double t) { return kernel_f(t, theta); }, x);
        // The stencil's own rounding noise is ~2e-10, so the comparison is
        // relative above the floor and absolute (3e-9) below it.
        CHECK(oracle::close_rel(kernel_f_derivative(x, theta), fd, 1e-5, 3e-4));
    }
}

TEST_CASE("second derivative matches a Richardson extrapolated stencil") {
    std::mt19937 rng(20240902);
    for (int i = 0; i < 100; ++i) {
        const double x = oracle::uniform(rng, -20.0, 20.0);
        const double theta = oracle::uniform(rng, 0.05, 20.0);
        const double fd =
            oracle::second_diff([&](double t) { return kernel_f(t, theta); }, x);
        // The floor absorbs the stencil's own rounding noise (~1e-9 at this
        // step size) where the true second derivative is small.
        CHECK(oracle::close_rel(kernel_f_second(x, theta), fd, 1e-5, 1e-2));
    }
}

TEST_CASE("second derivative changes sign exactly at the inflection point") {
    for (double theta : {0.07, 0.5, 1.8, 9.0}) {
        const double xs = inflection_point(theta);
        CHECK(xs == doctest::Approx(0.5 * std::log(2.0 * theta * theta + 2.0)));
        const double before = kernel_f_second(xs - 1e-3, theta);
        const double after = kernel_f_second(xs + 1e-3, theta);
        CHECK(before * after < 0.0);
        CHECK(std::abs(kernel_f_second(xs, theta)) < 1e-12);

        // A 1001-node sign scan across a wide window sees exactly one flip.
        int flips = 0;
        double prev = kernel_f_second(xs - 12.0, theta);
        for (int i = 1; i <= 1000; ++i) {
            const double v = kernel_f_second(xs - 12.0 + 24.0 * i / 1000.0, theta);
            if (prev * v < 0.0) ++flips;
            prev = v;
        }
        CHECK(flips == 1);
    }
}

TEST_CASE("map_F reduces to the scalar kernel on the invariant line") {
    const ModelParams params(0.7, 3);
    for (double t : {-3.0, -0.2, 0.0, 1.3, 6.0}) {
        const auto F = map_F({0.0, t}, params);
        REQUIRE(F.size() == 2);
        // First component maps the invariant line to itself.
        CHECK(std::abs(F[0]) < 1e-14);
        CHECK(F[1] == doctest::Approx(kernel_f(t, 0.7)).epsilon(1e-14));
    }
}

TEST_CASE("map_F agrees with the direct formula for m = 3") {
    const ModelParams params(1.6, 2, 3);
    const std::vector<double> h{0.1, -0.2, 0.5};
    const auto F = map_F(h, params);
    const double theta = params.theta;
    for (int i = 0; i < 3; ++i) {
        double num = std::pow(theta, 3 - i);
        double den = 1.0;
        for (int j = 0; j < 3; ++j) {
            num += std::pow(theta, std::abs(i - j)) * std::exp(h[static_cast<std::size_t>(j)]);
            den += std::pow(theta, 3 - j) * std::exp(h[static_cast<std::size_t>(j)]);
        }
        CHECK(F[static_cast<std::size_t>(i)] ==
              doctest::Approx(std::log(num / den)).epsilon(1e-12));
    }
}

TEST_CASE("operator_W preserves the invariant set and matches the reduced map") {
    const ModelParams params(0.45, 3);
    const BranchPattern pattern{2, 1, 1, 2};
    const FieldVector v{0.0, 0.8, 0.0, -0.4};
    const auto w = operator_W(v, pattern, params);
    CHECK(std::abs(w.h1) < 1e-14);
    CHECK(std::abs(w.l1) < 1e-14);
    const auto r = reduced_rhs({v.h2, v.l2}, pattern, params);
    CHECK(w.h2 == doctest::Approx(r.h2).epsilon(1e-14));
    CHECK(w.l2 == doctest::Approx(r.l2).epsilon(1e-14));
}

TEST_CASE("model parameter validation rejects bad input") {
    CHECK_THROWS_AS(ModelParams(-1.0, 2), domain_error);
    CHECK_THROWS_AS(ModelParams(0.0, 2), domain_error);
    CHECK_THROWS_AS(ModelParams(std::nan(""), 2), domain_error);
    CHECK_THROWS_AS(ModelParams(0.5, 0), domain_error);
    CHECK_THROWS_AS(kernel_f(std::nan(""), 2.0), domain_error);
    CHECK_THROWS_AS(kernel_f(0.0, -2.0), domain_error);

    const auto p = ModelParams::from_coupling(std::log(2.0), 1.0, 3);
    CHECK(p.theta == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_FALSE(p.degenerate());
    CHECK(ModelParams(1.0, 2).degenerate());
}

TEST_CASE("branch pattern consistency is enforced") {
    const ModelParams params(0.5, 3);
    CHECK(BranchPattern{2, 1, 1, 2}.consistent_with(params));
    CHECK_FALSE(BranchPattern{2, 2, 1, 2}.consistent_with(params));
    CHECK_FALSE(BranchPattern{-1, 4, 1, 2}.consistent_with(params));
    CHECK_THROWS_AS((BranchPattern{2, 2, 1, 2}.require_consistent(params)), contract_error);
    CHECK_THROWS_AS(operator_W({0, 0, 0, 0}, {1, 1, 1, 1}, params), contract_error);
}
