#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "nlarz/model.hpp"

using namespace nlarz;

namespace {
const FundamentalDiagram fd{};
const PressureLaw pl{};
}  // namespace

TEST_CASE("equilibrium speed hits both breakpoints and the midpoint") {
    CHECK(equilibrium_speed(fd, 10.0) == 20.0);
    CHECK(equilibrium_speed(fd, 140.0) == 0.0);
    CHECK(equilibrium_speed(fd, 75.0) == doctest::Approx(10.0).epsilon(1e-14));
    // frozen scalar oracle: 20*(1 - 46/130)
    CHECK(equilibrium_speed(fd, 56.0) ==
          doctest::Approx(12.923076923076922).epsilon(1e-14));
    CHECK(equilibrium_speed(fd, 5.0) == 20.0);
    CHECK(equilibrium_speed(fd, 150.0) == 0.0);
}

TEST_CASE("equilibrium speed rejects negative density") {
    CHECK_THROWS_AS(equilibrium_speed(fd, -1.0), std::domain_error);
    CHECK_THROWS_AS(equilibrium_speed_derivative(fd, -0.5), std::domain_error);
    CHECK_THROWS_AS(pressure(pl, -2.0), std::domain_error);
}

TEST_CASE("equilibrium speed derivative takes the congested-side value at breakpoints") {
    const double ramp = -20.0 / 130.0;
    CHECK(equilibrium_speed_derivative(fd, 56.0) == doctest::Approx(ramp).epsilon(1e-14));
    CHECK(equilibrium_speed_derivative(fd, 5.0) == 0.0);
    CHECK(equilibrium_speed_derivative(fd, 150.0) == 0.0);
    CHECK(equilibrium_speed_derivative(fd, 10.0) == doctest::Approx(ramp).epsilon(1e-14));
    CHECK(equilibrium_speed_derivative(fd, 140.0) == 0.0);
}

TEST_CASE("equilibrium speed is continuous and non-increasing") {
    double prev = equilibrium_speed(fd, 0.0);
    for (int i = 1; i <= 3000; ++i) {
        double rho = 150.0 * i / 3000.0;
        double v = equilibrium_speed(fd, rho);
        CHECK(v <= prev + 1e-14);
        prev = v;
    }
    // exact joints from both sides
    CHECK(equilibrium_speed(fd, 10.0 - 1e-12) ==
          doctest::Approx(20.0).epsilon(1e-12));
    CHECK(equilibrium_speed(fd, 140.0 - 1e-9) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("pressure matches the square-root law") {
    CHECK(pressure(pl, 10.0) == 0.0);
    CHECK(pressure(pl, 5.0) == 0.0);
    CHECK(pressure(pl, 75.0) == doctest::Approx(8.0).epsilon(1e-14));
    // frozen scalar oracle: 8*sqrt(46/84)
    CHECK(pressure(pl, 56.0) ==
          doctest::Approx(5.9201029592076395).epsilon(1e-13));
}

TEST_CASE("pressure is frozen above the cap") {
    const double cap = pl.rho_cap();
    CHECK(cap == 139.5);
    // frozen scalar oracle at the cap
    CHECK(pressure(pl, cap) ==
          doctest::Approx(128.74781551544865).epsilon(1e-12));
    CHECK(pressure(pl, 139.9) == pressure(pl, cap));
    CHECK(pressure(pl, 500.0) == pressure(pl, cap));
}

TEST_CASE("pressure is non-decreasing up to the cap") {
    double prev = pressure(pl, 10.0);
    for (int i = 1; i <= 2000; ++i) {
        double rho = 10.0 + (139.5 - 10.0) * i / 2000.0;
        double h = pressure(pl, rho);
        CHECK(h >= prev - 1e-14);
        prev = h;
    }
}

TEST_CASE("pressure derivative closed form at reference densities") {
    // 520/4225
    CHECK(pressure_derivative(pl, 75.0) ==
          doctest::Approx(0.12307692307692308).epsilon(1e-13));
    // frozen: closed form and central difference agree to 2.4e-11 rel
    CHECK(pressure_derivative(pl, 56.0) ==
          doctest::Approx(0.09958765329930033).epsilon(1e-12));
    CHECK(pressure_derivative(pl, 120.0) ==
          doctest::Approx(0.5543218625245872).epsilon(1e-13));
}

TEST_CASE("pressure derivative is positive on its domain") {
    for (int i = 1; i < 100; ++i) {
        double rho = 10.0 + (139.5 - 10.0) * i / 100.0;
        CHECK(pressure_derivative(pl, rho) > 0.0);
    }
}

TEST_CASE("pressure derivative domain errors outside (rho_f, rho_cap)") {
    CHECK_THROWS_AS(pressure_derivative(pl, 10.0), std::domain_error);
    CHECK_THROWS_AS(pressure_derivative(pl, 5.0), std::domain_error);
    CHECK_THROWS_AS(pressure_derivative(pl, 139.5), std::domain_error);
    CHECK_THROWS_AS(pressure_derivative(pl, 140.0), std::domain_error);
}

TEST_CASE("clamped pressure derivative is a total function") {
    CHECK(pressure_derivative_clamped(pl, 5.0) == 0.0);
    CHECK(pressure_derivative_clamped(pl, 10.0) == 0.0);
    CHECK(pressure_derivative_clamped(pl, 56.0) == pressure_derivative(pl, 56.0));
    // frozen beyond the cap at the cap's closed-form value
    CHECK(pressure_derivative_clamped(pl, 140.0) ==
          doctest::Approx(129.2449113282496).epsilon(1e-12));
    CHECK(pressure_derivative_clamped(pl, 1000.0) ==
          pressure_derivative_clamped(pl, 139.6));
}

TEST_CASE("pressure derivative agrees with central differences") {
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> dist(11.0, 138.5);
    const double step = 1e-4;
    for (int trial = 0; trial < 100; ++trial) {
        double rho = dist(rng);
        double numeric =
            (pressure(pl, rho + step) - pressure(pl, rho - step)) / (2.0 * step);
        double closed = pressure_derivative(pl, rho);
        CHECK(closed == doctest::Approx(numeric).epsilon(1e-6));
    }
}

TEST_CASE("equilibrium speed derivative agrees with central differences") {
    std::mt19937 rng(20240812u);
    std::uniform_real_distribution<double> dist(0.5, 149.5);
    const double step = 1e-5;
    for (int trial = 0; trial < 200; ++trial) {
        double rho = dist(rng);
        // stay clear of the breakpoints where one-sided values differ
        if (std::abs(rho - 10.0) < 2.0 * step || std::abs(rho - 140.0) < 2.0 * step)
            continue;
        double numeric = (equilibrium_speed(fd, rho + step) -
                          equilibrium_speed(fd, rho - step)) /
                         (2.0 * step);
        CHECK(equilibrium_speed_derivative(fd, rho) ==
              doctest::Approx(numeric).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("parameter validation rejects inverted or non-positive values") {
    FundamentalDiagram bad_fd;
    bad_fd.rho_f = 150.0;
    CHECK_THROWS_AS(bad_fd.validate(), std::invalid_argument);
    bad_fd = FundamentalDiagram{};
    bad_fd.v_f = 0.0;
    CHECK_THROWS_AS(bad_fd.validate(), std::invalid_argument);
    bad_fd = FundamentalDiagram{};
    bad_fd.rho_f = 0.0;
    CHECK_THROWS_AS(bad_fd.validate(), std::invalid_argument);

    PressureLaw bad_pl;
    bad_pl.scale = -1.0;
    CHECK_THROWS_AS(bad_pl.validate(), std::invalid_argument);
    bad_pl = PressureLaw{};
    bad_pl.rho_j = bad_pl.rho_f;
    CHECK_THROWS_AS(bad_pl.validate(), std::invalid_argument);

    ModelParams bad_mp;
    bad_mp.tau = 0.0;
    CHECK_THROWS_AS(bad_mp.validate(), std::invalid_argument);
    bad_mp = ModelParams{};
    bad_mp.lookahead = -5.0;
    CHECK_THROWS_AS(bad_mp.validate(), std::invalid_argument);
    CHECK_NOTHROW(ModelParams{}.validate());
}
