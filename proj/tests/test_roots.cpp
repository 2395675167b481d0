#include <doctest.h>

#include <cmath>

#include "sos/errors.hpp"
#include "sos/roots.hpp"

using namespace sos;

namespace {

RootFindConfig window(double lo, double hi, int points = 2001) {
    RootFindConfig cfg;
    cfg.scan_lo = lo;
    cfg.scan_hi = hi;
    cfg.scan_points = points;
    return cfg;
}

} // namespace

TEST_CASE("finds the three roots of a separated cubic") {
    const auto roots = bracketed_roots([](double x) { return x * (x - 1.0) * (x + 1.0); },
                                       window(-2.3, 2.1));
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(std::abs(roots[1]) < 1e-10);
    CHECK(roots[2] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("a tangency is reported exactly once") {
    // x^2 touches zero without a sign change; the near-zero run at the
    // central node must yield a single root.
    const auto roots = bracketed_roots([](double x) { return x * x; }, window(-1.0, 1.0, 2001));
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0]) < 1e-3);
}

TEST_CASE("a near-zero node flanked by a sign change refines on the wide bracket") {
    // x^3 is below tol_residual on several nodes around 0 but still crosses;
    // the run is collapsed and bisected against the flanking nodes.
    const auto roots = bracketed_roots([](double x) { return x * x * x; }, window(-1.0, 1.0, 2001));
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0]) < 1e-10);
}

TEST_CASE("no sign structure yields an empty result") {
    const auto roots = bracketed_roots([](double x) { return 2.0 + x * x; }, window(-5.0, 5.0));
    CHECK(roots.empty());
}

TEST_CASE("bisect demands a sign change and honours exact endpoint zeros") {
    CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-13),
                    contract_error);
    CHECK(bisect_root([](double x) { return x; }, 0.0, 1.0, 1e-13) == 0.0);
    CHECK(bisect_root([](double x) { return x - 1.0; }, 0.0, 1.0, 1e-13) == 1.0);
    const double r = bisect_root([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-14);
    CHECK(r == doctest::Approx(std::acos(-1.0) / 2.0).epsilon(1e-13));
}

TEST_CASE("configuration validation rejects malformed windows") {
    CHECK_THROWS_AS(bracketed_roots([](double x) { return x; }, window(1.0, -1.0)), contract_error);
    CHECK_THROWS_AS(bracketed_roots([](double x) { return x; }, window(-1.0, 1.0, 50)),
                    contract_error);
    RootFindConfig bad = window(-1.0, 1.0);
    bad.tol_x = 0.0;
    CHECK_THROWS_AS(bracketed_roots([](double x) { return x; }, bad), contract_error);
    bad = window(-1.0, 1.0);
    bad.max_iter = 0;
    CHECK_THROWS_AS(bracketed_roots([](double x) { return x; }, bad), contract_error);
    bad = window(-1.0, 1.0);
    bad.tol_residual = -1.0;
    CHECK_THROWS_AS(bracketed_roots([](double x) { return x; }, bad), contract_error);
}

TEST_CASE("merge collapses duplicate detections of the same root") {
    // A root exactly on a grid node is seen by the near-zero pass; the
    // neighbouring sign-change pass must not add a second copy.
    const auto roots = bracketed_roots([](double x) { return x; }, window(-1.0, 1.0, 2001));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(0.0));
}

TEST_CASE("steep roots are located to the requested tolerance") {
    const auto roots = bracketed_roots(
        [](double x) { return std::expm1(50.0 * (x - 0.123456)); }, window(-2.0, 2.0));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(0.123456).epsilon(1e-12));
}
