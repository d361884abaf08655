// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "fasvbcm/channel.hpp"
#include "fasvbcm/error.hpp"
#include "fasvbcm/specfun.hpp"

using Catch::Approx;

namespace {

Eigen::MatrixXd to_eigen(const fas::Matrix& m)
{
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j);
    return out;
}

}  // namespace

TEST_CASE("Jakes covariance entries")
{
    const fas::FasGeometry g{6, 2.5, 0.7};
    const fas::Covariance cov = fas::build_covariance(g);
    REQUIRE(cov.dim() == 6);
    for (int k = 0; k < 6; ++k) {
        CHECK(cov.entries(k, k) == Approx(0.7));
        for (int l = 0; l < 6; ++l) {
            const double expected = 0.7 * std::cyl_bessel_j(0.0, 2.0 * M_PI * std::abs(k - l) * 2.5 / 5.0);
            CHECK(cov.entries(k, l) == Approx(expected).margin(1e-12));
            CHECK(cov.entries(k, l) == cov.entries(l, k));
        }
    }
}

TEST_CASE("eigen spectrum agrees with Eigen's self-adjoint solver")
{
    for (const fas::FasGeometry g : {fas::FasGeometry{5, 2.0, 1.0}, fas::FasGeometry{20, 4.0, 1.0},
                                     fas::FasGeometry{25, 8.0, 0.5}, fas::FasGeometry{40, 3.0, 2.0}}) {
        const fas::Covariance cov = fas::build_covariance(g);
        const fas::Spectrum s = fas::eigen_spectrum(cov);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(cov.entries));
        Eigen::VectorXd ref = solver.eigenvalues().reverse();
        REQUIRE(s.dim() == static_cast<std::size_t>(g.num_ports));
        for (int i = 0; i < g.num_ports; ++i)
            CHECK(s.eigenvalues[i] == Approx(ref(i)).margin(1e-10 * g.mean_gain * g.num_ports));
        CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
    }
}

TEST_CASE("eigenvectors diagonalise the covariance")
{
    const fas::Covariance cov = fas::build_covariance({12, 3.0, 1.0});
    const fas::EigenDecomposition e = fas::symmetric_eigen(cov);
    const Eigen::MatrixXd v = to_eigen(e.vectors);
    const Eigen::MatrixXd a = to_eigen(cov.entries);
    const Eigen::MatrixXd d = v.transpose() * a * v;
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            CHECK(d(i, j) == Approx(i == j ? e.spectrum.eigenvalues[i] : 0.0).margin(1e-10));
    CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(12, 12)).norm() < 1e-10);
}

TEST_CASE("coloring factor reproduces the covariance")
{
    for (const fas::FasGeometry g : {fas::FasGeometry{5, 2.0, 1.0}, fas::FasGeometry{30, 3.0, 0.5}}) {
        const fas::Covariance cov = fas::build_covariance(g);
        const fas::Matrix f = fas::coloring_factor(cov);
        CHECK(fas::relative_frobenius_error(fas::multiply(f, fas::transpose(f)), cov.entries) < 1e-10);
    }
}

TEST_CASE("covariance CSV round trip")
{
    const fas::Covariance cov = fas::build_covariance({7, 1.5, 0.3});
    std::stringstream buffer;
    fas::write_covariance_csv(buffer, cov);
    const fas::Covariance back = fas::read_covariance_csv(buffer);
    CHECK(back.mean_gain == cov.mean_gain);
    CHECK(back.entries == cov.entries);
}

TEST_CASE("invalid inputs are rejected")
{
    CHECK_THROWS_AS((fas::FasGeometry{1, 2.0, 1.0}.validate()), fas::DomainError);
    CHECK_THROWS_AS((fas::FasGeometry{5, 0.0, 1.0}.validate()), fas::DomainError);
    CHECK_THROWS_AS((fas::FasGeometry{5, 2.0, -1.0}.validate()), fas::DomainError);
    fas::Covariance asym{fas::Matrix::identity(3), 1.0};
    asym.entries(0, 1) = 0.5;
    CHECK_THROWS_AS(fas::symmetric_eigen(asym), fas::DomainError);
    fas::Covariance indefinite{fas::Matrix::identity(2), 1.0};
    indefinite.entries(0, 1) = indefinite.entries(1, 0) = 2.0;
    CHECK_THROWS_AS(fas::coloring_factor(indefinite), fas::NumericalError);
    std::stringstream bad("# dim=2 eta=1\n1,0\n");
    CHECK_THROWS(fas::read_covariance_csv(bad));
}
