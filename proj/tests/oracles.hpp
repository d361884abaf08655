// SPDX-License-Identifier: Apache-2.0
// Reference implementations used only by the tests. They share no code with the library.
#pragma once

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

/// Power series sum_k (-1)^k (x^2/4)^k / (k!)^2 in 100-digit arithmetic.
inline double bessel_j0(double x)
{
    using big = boost::multiprecision::cpp_bin_float_100;
    const big q = big(x) * big(x) / 4;
    big term = 1;
    big sum = 1;
    for (int k = 1; k < 400; ++k) {
        term *= -q / (big(k) * big(k));
        sum += term;
        if (abs(term) < big("1e-40") && k > q)
            break;
    }
    return static_cast<double>(sum);
}

/// Q1(a, b) as the adaptive integral of the Rician density over [b, inf).
inline double marcum_q1(double a, double b)
{
    auto density = [a](double x) {
        const double z = a * x;
        const double i0e = std::cyl_bessel_i(0.0, z) * std::exp(-z);
        return x * std::exp(-0.5 * (x - a) * (x - a)) * i0e;
    };
    const double top = std::max(a, b) + 40.0;
    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    double sum = 0.0;
    // split at the density peak so the adaptive rule never straddles it blindly
    const double peak = std::max(a, 1.0);
    if (b < peak) {
        sum += gk::integrate(density, b, peak, 12, 1e-13);
        sum += gk::integrate(density, peak, top, 12, 1e-13);
    } else {
        sum += gk::integrate(density, b, top, 12, 1e-13);
    }
    return sum;
}

template <class F>
double integrate(F f, double lo, double hi, double tol = 1e-10, unsigned depth = 12)
{
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, depth, tol);
}

}  // namespace oracle
