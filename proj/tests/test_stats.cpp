// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fasvbcm/specfun.hpp"
#include "fasvbcm/stats.hpp"
#include "oracles.hpp"

using Catch::Approx;

namespace {

// Empirical maximum amplitude of an L-port block with common correlation rho.
std::vector<double> block_samples(int size, double rho, double eta, int n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    std::vector<double> out(n);
    for (int s = 0; s < n; ++s) {
        const double cr = normal(rng);
        const double ci = normal(rng);
        double best = 0.0;
        for (int k = 0; k < size; ++k) {
            const double re = std::sqrt(eta) * (std::sqrt(rho) * cr + std::sqrt(1.0 - rho) * normal(rng));
            const double im = std::sqrt(eta) * (std::sqrt(rho) * ci + std::sqrt(1.0 - rho) * normal(rng));
            best = std::max(best, std::hypot(re, im));
        }
        out[s] = best;
    }
    std::sort(out.begin(), out.end());
    return out;
}

double empirical_cdf(const std::vector<double>& sorted, double x)
{
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) /
           static_cast<double>(sorted.size());
}

fas::BlockPartition single_block(int size, double rho)
{
    fas::BlockPartition p;
    p.blocks.push_back({size, rho, 1.0 + (size - 1) * rho, std::vector<double>(size - 1, 1.0 - rho)});
    p.source_dim = size;
    return p;
}

}  // namespace

TEST_CASE("Rician cdf is one minus Marcum Q")
{
    for (double x : {0.1, 0.8, 1.5, 3.0})
        for (double theta : {0.0, 0.4, 1.2})
            CHECK(fas::rician_cdf(x, theta, 0.6) ==
                  Approx(1.0 - oracle::marcum_q1(theta / 0.6, x / 0.6)).margin(1e-10));
}

TEST_CASE("Rician pdf integrates to its cdf")
{
    for (double theta : {0.0, 0.7, 2.5}) {
        const double x = 1.3;
        const double integral = oracle::integrate([&](double t) { return fas::rician_pdf(t, theta, 0.8); }, 0.0, x);
        CHECK(integral == Approx(fas::rician_cdf(x, theta, 0.8)).margin(1e-10));
    }
}

TEST_CASE("uncorrelated and single-port blocks have closed forms")
{
    const double eta = 0.5;
    for (double x : {0.2, 0.7, 1.4}) {
        CHECK(fas::block_max_cdf(x, {1, 0.0}, eta) == Approx(1.0 - std::exp(-x * x / eta)).margin(1e-12));
        CHECK(fas::block_max_cdf(x, {1, 0.6}, eta) == Approx(1.0 - std::exp(-x * x / eta)).margin(1e-10));
        CHECK(fas::block_max_cdf(x, {4, 0.0}, eta) ==
              Approx(std::pow(1.0 - std::exp(-x * x / eta), 4)).margin(1e-12));
    }
}

TEST_CASE("block maximum cdf matches a direct simulation of the block")
{
    for (auto [size, rho] : {std::pair{3, 0.3}, std::pair{8, 0.7}, std::pair{15, 0.95}}) {
        const std::vector<double> sorted = block_samples(size, rho, 1.0, 200000, 17u + size);
        double worst = 0.0;
        for (int i = 1; i <= 40; ++i) {
            const double x = 0.075 * i;
            worst = std::max(worst, std::abs(fas::block_max_cdf(x, {size, rho}, 1.0) - empirical_cdf(sorted, x)));
        }
        CHECK(worst < 0.006);
    }
}

TEST_CASE("block maximum pdf is the derivative of the cdf")
{
    const fas::BlockMaxDistribution d({6, 0.8}, 1.0);
    for (double x : {0.3, 0.9, 1.5, 2.2}) {
        const double h = 1e-5;
        CHECK(d.pdf(x) == Approx((d.cdf(x + h) - d.cdf(x - h)) / (2 * h)).margin(1e-6));
    }
}

TEST_CASE("amplitude distribution multiplies block cdfs")
{
    fas::BlockPartition p = single_block(3, 0.5);
    p.blocks.push_back({2, 0.2, 1.2, {0.8}});
    p.source_dim = 5;
    const fas::AmplitudeDistribution dist(p, 0.8);
    for (double x : {0.4, 1.0, 1.8}) {
        const double expected = fas::block_max_cdf(x, {3, 0.5}, 0.8) * fas::block_max_cdf(x, {2, 0.2}, 0.8);
        CHECK(dist.cdf(x) == Approx(expected).margin(1e-14));
        const double h = 1e-5;
        CHECK(dist.pdf(x) == Approx((dist.cdf(x + h) - dist.cdf(x - h)) / (2 * h)).margin(1e-6));
    }
    CHECK(dist.cdf(0.0) == 0.0);
    CHECK(dist.cdf(20.0) == Approx(1.0).margin(1e-12));
}

TEST_CASE("statistical rho is clamped")
{
    CHECK(fas::statistical_rho(-0.2) == 0.0);
    CHECK(fas::statistical_rho(0.4) == 0.4);
    CHECK(fas::statistical_rho(1.3) < 1.0);
}
