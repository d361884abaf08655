// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fas {

/// Zero-order Bessel function of the first kind. Absolute error below 1e-12 on |x| <= 200.
double bessel_j0(double x);

/// e^{-x} I0(x) for x >= 0.
double bessel_i0_scaled(double x);

/// First-order Marcum Q-function Q1(a, b) = P(R > b) for a Rician R with
/// unit scatter variance and line-of-sight amplitude a.
double marcum_q1(double a, double b);

/// Gauss-Chebyshev (first kind) nodes t_p = cos((2p-1)pi/(2U)), p = 1..U, strictly decreasing.
struct ChebyshevRule {
    std::size_t order = 0;
    std::vector<double> nodes;

    /// Weight (pi/U) * sqrt(1 - t_p^2) applied when integrating a plain g(t) over [-1, 1].
    [[nodiscard]] double plain_weight(std::size_t p) const;
};

ChebyshevRule chebyshev_rule(std::size_t order);

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(std::size_t order);

/// Fixed-order pairwise summation; the result depends only on the element order.
double pairwise_sum(std::span<const double> values);

}  // namespace fas
