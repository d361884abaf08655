// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fasvbcm/error.hpp"
#include "fasvbcm/montecarlo.hpp"
#include "fasvbcm/secrecy.hpp"
#include "fasvbcm/specfun.hpp"

using Catch::Approx;

namespace {

fas::McSettings settings(long long n, std::uint64_t seed = 7)
{
    fas::McSettings s;
    s.num_samples = n;
    s.seed = seed;
    return s;
}

}  // namespace

TEST_CASE("single port amplitude has the Rayleigh mean")
{
    const double eta = 0.7;
    fas::Matrix f(1, 1, std::sqrt(eta));
    const std::vector<double> s = fas::draw_max_amplitudes(f, settings(1'000'000), 0);
    const double mean = fas::pairwise_sum(s) / static_cast<double>(s.size());
    CHECK(mean == Approx(std::sqrt(std::numbers::pi * eta) / 2.0).epsilon(0.005));
}

TEST_CASE("zero factor gives zero amplitude")
{
    fas::Matrix f(3, 3, 0.0);
    for (double v : fas::draw_max_amplitudes(f, settings(1000), 0))
        CHECK(v == 0.0);
}

TEST_CASE("maximum of four independent ports follows the order statistic")
{
    std::vector<double> s = fas::draw_max_amplitudes(fas::Matrix::identity(4), settings(100000), 0);
    std::sort(s.begin(), s.end());
    double ks = 0.0;
    const double n = static_cast<double>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = std::pow(1.0 - std::exp(-s[i] * s[i]), 4);
        ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
    }
    CHECK(ks < 0.005);
}

TEST_CASE("generated channels reproduce the target covariance")
{
    const fas::Covariance cov = fas::build_covariance({5, 2.0, 0.8});
    const fas::Matrix f = fas::coloring_factor(cov);
    const int n = 200000;
    fas::Matrix acc(5, 5);
    std::vector<double> re(5), im(5);
    for (int d = 0; d < n; ++d) {
        fas::SplitMix64 rng = fas::substream(11, 0, static_cast<std::uint64_t>(d));
        fas::draw_channel(f, rng, re, im);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                acc(i, j) += re[i] * re[j] + im[i] * im[j];
    }
    double worst = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            worst = std::max(worst, std::abs(acc(i, j) / n - cov.entries(i, j)));
    CHECK(worst < 0.02 * cov.mean_gain);
}

TEST_CASE("zero power gives zero ASC")
{
    const fas::Covariance a = fas::build_covariance({6, 2.0, 1.0});
    const fas::McEstimate e = fas::mc_asc(a, a, 0.0, 1.0, 1.0, settings(2000));
    CHECK(e.mean == 0.0);
    CHECK(e.std_error == 0.0);
}

TEST_CASE("estimates are identical across thread counts and chunk sizes")
{
    const fas::Covariance a = fas::build_covariance({10, 2.0, 1.0});
    const fas::Covariance e = fas::build_covariance({10, 2.0, 0.5});
    fas::McSettings s = settings(20000, 99);
    s.threads = 1;
    s.chunk_size = 4096;
    const fas::McEstimate ref = fas::mc_asc(a, e, 10.0, 1.0, 1.0, s);
    const fas::McEstimate ref_sop = fas::mc_sop(a, e, 10.0, 1.0, 1.0, 0.5, s);
    for (auto [threads, chunk] : {std::pair{4, 4096}, std::pair{3, 1000}, std::pair{8, 37}}) {
        s.threads = threads;
        s.chunk_size = chunk;
        const fas::McEstimate x = fas::mc_asc(a, e, 10.0, 1.0, 1.0, s);
        CHECK(x.mean == ref.mean);
        CHECK(x.std_error == ref.std_error);
        CHECK(fas::mc_sop(a, e, 10.0, 1.0, 1.0, 0.5, s).mean == ref_sop.mean);
    }
}

TEST_CASE("standard error scales as one over root n")
{
    const fas::Covariance a = fas::build_covariance({8, 2.0, 1.0});
    const fas::Covariance e = fas::build_covariance({8, 2.0, 0.5});
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const double small = fas::mc_asc(a, e, 10.0, 1.0, 1.0, settings(10000, seed)).std_error;
        const double large = fas::mc_asc(a, e, 10.0, 1.0, 1.0, settings(40000, seed)).std_error;
        CHECK(large / small == Approx(0.5).epsilon(0.2));
    }
}

TEST_CASE("SOP estimates at the extremes")
{
    const fas::Covariance a = fas::build_covariance({6, 2.0, 1.0});
    const fas::McEstimate all = fas::mc_sop(a, a, 10.0, 1.0, 1.0, 50.0, settings(5000));
    CHECK(all.mean == 1.0);
    CHECK(all.std_error == Approx(std::sqrt(0.5 / 5000.0)));
    const fas::McEstimate sym = fas::mc_sop(a, a, 10.0, 1.0, 1.0, 1e-12, settings(50000));
    CHECK(std::abs(sym.mean - 0.5) < 3.0 * sym.std_error);
    CHECK(sym.ci95_low <= sym.mean);
    CHECK(sym.ci95_high == Approx(sym.mean + 1.96 * sym.std_error));
}

TEST_CASE("invalid settings are rejected")
{
    const fas::Covariance a = fas::build_covariance({4, 2.0, 1.0});
    CHECK_THROWS_AS(fas::mc_asc(a, a, 1.0, 1.0, 1.0, settings(999)), fas::DomainError);
    CHECK_THROWS_AS(fas::mc_asc(a, a, -1.0, 1.0, 1.0, settings(1000)), fas::DomainError);
    fas::McSettings s = settings(1000);
    s.chunk_size = 0;
    CHECK_THROWS_AS(s.validate(), fas::DomainError);
}
