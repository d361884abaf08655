// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "fasvbcm/specfun.hpp"
#include "oracles.hpp"

using Catch::Approx;

TEST_CASE("bessel_j0 matches the series oracle on [0, 50]")
{
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double x = 0.05 * i;
        worst = std::max(worst, std::abs(fas::bessel_j0(x) - oracle::bessel_j0(x)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("bessel_j0 is even and hits its first zero")
{
    CHECK(fas::bessel_j0(0.0) == 1.0);
    CHECK(fas::bessel_j0(-3.7) == fas::bessel_j0(3.7));
    CHECK(std::abs(fas::bessel_j0(2.404825557695773)) < 1e-12);
    CHECK(fas::bessel_j0(150.0) == Approx(std::cyl_bessel_j(0.0, 150.0)).margin(1e-12));
}

TEST_CASE("scaled I0 agrees with the standard library")
{
    for (double x : {0.0, 1e-8, 0.3, 1.0, 3.75, 10.0, 50.0, 300.0}) {
        const double expected = std::cyl_bessel_i(0.0, x) * std::exp(-x);
        CHECK(fas::bessel_i0_scaled(x) == Approx(expected).epsilon(1e-13));
    }
    CHECK(fas::bessel_i0_scaled(1e6) == Approx(1.0 / std::sqrt(2.0 * std::numbers::pi * 1e6)).epsilon(1e-6));
}

TEST_CASE("marcum_q1 matches the adaptive integration oracle on the [0, 8] grid")
{
    double worst = 0.0;
    for (int i = 0; i <= 32; ++i) {
        for (int j = 0; j <= 32; ++j) {
            const double a = 0.25 * i;
            const double b = 0.25 * j;
            worst = std::max(worst, std::abs(fas::marcum_q1(a, b) - oracle::marcum_q1(a, b)));
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("marcum_q1 special cases")
{
    for (double b : {0.0, 0.5, 2.0, 6.0})
        CHECK(fas::marcum_q1(0.0, b) == Approx(std::exp(-0.5 * b * b)).margin(1e-15));
    for (double a : {0.0, 1.0, 5.0})
        CHECK(fas::marcum_q1(a, 0.0) == 1.0);
    CHECK(fas::marcum_q1(1.0, 1.0) == Approx(oracle::marcum_q1(1.0, 1.0)).margin(1e-12));
    CHECK(fas::marcum_q1(30.0, 2.0) == Approx(1.0).margin(1e-12));
    CHECK(fas::marcum_q1(2.0, 30.0) == Approx(0.0).margin(1e-12));
}

TEST_CASE("Chebyshev rule nodes and weight sum")
{
    for (std::size_t u : {1u, 4u, 30u}) {
        const fas::ChebyshevRule rule = fas::chebyshev_rule(u);
        REQUIRE(rule.nodes.size() == u);
        for (std::size_t p = 1; p < u; ++p)
            CHECK(rule.nodes[p] < rule.nodes[p - 1]);
    }
    // sum_p (pi/U) sin((2p-1) pi / (2U)) = (pi/U) / sin(pi / (2U))
    double prev_error = 0.0;
    for (std::size_t u : {8u, 16u, 32u, 64u}) {
        const fas::ChebyshevRule rule = fas::chebyshev_rule(u);
        double sum = 0.0;
        for (std::size_t p = 0; p < u; ++p)
            sum += rule.plain_weight(p);
        const double pi = std::numbers::pi;
        const double closed = (pi / static_cast<double>(u)) / std::sin(pi / (2.0 * static_cast<double>(u)));
        CHECK(sum == Approx(closed).epsilon(1e-13));
        const double error = std::abs(sum - 2.0);
        if (prev_error > 0.0)
            CHECK(prev_error / error == Approx(4.0).epsilon(0.02));
        prev_error = error;
    }
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly")
{
    const fas::GaussLegendreRule rule = fas::gauss_legendre(10);
    double sum = 0.0;
    for (double w : rule.weights)
        sum += w;
    CHECK(sum == Approx(2.0).epsilon(1e-14));
    double even = 0.0;
    double odd = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        even += rule.weights[i] * std::pow(rule.nodes[i], 18);
        odd += rule.weights[i] * std::pow(rule.nodes[i], 19);
    }
    CHECK(even == Approx(2.0 / 19.0).epsilon(1e-13));
    CHECK(odd == Approx(0.0).margin(1e-14));
}

TEST_CASE("pairwise_sum is accurate and order-defined")
{
    std::vector<double> values(1'000'000, 0.1);
    CHECK(fas::pairwise_sum(values) == Approx(1e5).epsilon(1e-13));
    CHECK(fas::pairwise_sum(std::vector<double>{}) == 0.0);
    CHECK(fas::pairwise_sum(std::vector<double>{3.5}) == 3.5);
}
