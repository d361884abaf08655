// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fasvbcm/error.hpp"

namespace fas {

namespace {

using std::numbers::pi;

double j0_series(double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-17)
            break;
    }
    return sum;
}

// J0(x) = (1/pi) * integral_0^pi cos(x sin t) dt. The integrand is smooth and periodic,
// so the trapezoidal rule with M panels is exact up to 2*J_{2M}(x).
double j0_trapezoid(double x)
{
    const int panels = static_cast<int>(std::ceil(0.5 * x)) + 24;
    double sum = 1.0;  // half-weight endpoints, cos(0) = 1 at both ends
    for (int j = 1; j < panels; ++j)
        sum += std::cos(x * std::sin(pi * j / panels));
    return sum / panels;
}

// Hankel expansion J0(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - pi/4.
double j0_hankel(double x)
{
    double p = 1.0;
    double q = 0.0;
    double a = 1.0;  // a_k(0) / x^k
    double previous = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= -(odd * odd) / (8.0 * k * x);
        const double mag = std::abs(a);
        if (mag > previous || mag < 1e-18)
            break;
        previous = mag;
        // P collects even k with alternating sign, Q collects odd k
        switch (k % 4) {
        case 1: q += a; break;
        case 2: p -= a; break;
        case 3: q -= a; break;
        default: p += a; break;
        }
    }
    const double chi = x - 0.25 * pi;
    return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// sum_{k >= first} r^k e^{-z} I_k(z) by Miller's backward recurrence, normalised with
// e^{-z} (I_0 + 2 sum_{k>=1} I_k) = 1.
double weighted_scaled_bessel_sum(double z, double r, int first, int top)
{
    constexpr double kBig = 1e250;
    constexpr double kShrink = 1e-250;
    double v_up = 0.0;    // I_{k+1}
    double v = 1e-280;    // I_k
    double acc = 0.0;
    double tail = 0.0;    // sum_{k>=1} I_k
    for (int k = top; k >= 1; --k) {
        if (k >= first)
            acc = acc * r + v;
        tail += v;
        const double v_down = v_up + (2.0 * k / z) * v;
        v_up = v;
        v = v_down;
        if (v > kBig || acc > kBig) {
            v *= kShrink;
            v_up *= kShrink;
            acc *= kShrink;
            tail *= kShrink;
        }
    }
    if (first == 0)
        acc = acc * r + v;
    const double norm = v + 2.0 * tail;
    return first == 0 ? acc / norm : r * acc / norm;
}

int miller_start(double z, double r, double a)
{
    double reach = 10.0 * std::sqrt(z) + 40.0;
    if (r > 1.0)
        reach += std::max(2.0 * z * std::log(r), 1.4 * a * a);
    return static_cast<int>(std::ceil(reach));
}

// Rician density in units of the scatter deviation, t e^{-(t-a)^2/2} e^{-at} I0(at).
double unit_rician_pdf(double t, double a)
{
    const double d = t - a;
    return t * std::exp(-0.5 * d * d) * bessel_i0_scaled(a * t);
}

double integrate_unit_rician(double from, double to, double a)
{
    static const GaussLegendreRule rule = gauss_legendre(10);
    if (to <= from)
        return 0.0;
    const int panels = static_cast<int>(std::ceil(to - from));
    const double width = (to - from) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double mid = from + (i + 0.5) * width;
        double part = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            part += rule.weights[j] * unit_rician_pdf(mid + 0.5 * width * rule.nodes[j], a);
        sum += 0.5 * width * part;
    }
    return sum;
}

constexpr double kSeriesLimit = 1000.0;  // a*b above which the density is integrated directly
constexpr double kGaussianReach = 14.0;  // standard deviations retained around the peak

}  // namespace

double bessel_j0(double x)
{
    if (!std::isfinite(x))
        throw DomainError("bessel_j0: non-finite argument");
    const double ax = std::abs(x);
    if (ax <= 8.0)
        return j0_series(ax);
    if (ax < 25.0)
        return j0_trapezoid(ax);
    return j0_hankel(ax);
}

double bessel_i0_scaled(double x)
{
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError("bessel_i0_scaled: argument must be finite and non-negative");
    if (x <= 30.0) {
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 500; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return std::exp(-x) * sum;
    }
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * x);
        sum += term;
        if (term < 1e-17)
            break;
    }
    return sum / std::sqrt(2.0 * pi * x);
}

double marcum_q1(double a, double b)
{
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0)
        throw DomainError("marcum_q1: arguments must be finite and non-negative");
    if (b == 0.0)
        return 1.0;
    if (a == 0.0)
        return std::exp(-0.5 * b * b);
    if (b - a > 40.0)
        return 0.0;
    if (a - b > 40.0)
        return 1.0;

    const double z = a * b;
    if (z > kSeriesLimit) {
        if (b >= a)
            return std::clamp(integrate_unit_rician(b, a + kGaussianReach, a), 0.0, 1.0);
        const double lower = std::max(0.0, a - kGaussianReach);
        return std::clamp(1.0 - integrate_unit_rician(lower, b, a), 0.0, 1.0);
    }

    const double gauss = std::exp(-0.5 * (a - b) * (a - b));
    if (a >= b + 4.0) {
        const double r = b / a;
        const double cdf = gauss * weighted_scaled_bessel_sum(z, r, 1, miller_start(z, r, a));
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    const double r = a / b;
    return std::clamp(gauss * weighted_scaled_bessel_sum(z, r, 0, miller_start(z, r, a)), 0.0, 1.0);
}

double ChebyshevRule::plain_weight(std::size_t p) const
{
    const double t = nodes.at(p);
    return pi / static_cast<double>(order) * std::sqrt(std::max(0.0, 1.0 - t * t));
}

ChebyshevRule chebyshev_rule(std::size_t order)
{
    if (order == 0)
        throw DomainError("chebyshev_rule: order must be positive");
    ChebyshevRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    for (std::size_t p = 1; p <= order; ++p)
        rule.nodes[p - 1] = std::cos((2.0 * p - 1.0) * pi / (2.0 * order));
    return rule;
}

GaussLegendreRule gauss_legendre(std::size_t order)
{
    if (order == 0)
        throw DomainError("gauss_legendre: order must be positive");
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const std::size_t half = (order + 1) / 2;
    const double n = static_cast<double>(order);
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16)
                break;
        }
        rule.nodes[i] = x;
        rule.nodes[order - 1 - i] = -x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1)
        rule.nodes[half - 1] = 0.0;
    return rule;
}

double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values)
            s += v;
        return s;
    }
    const std::size_t mid = values.size() / 2;
    return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

}  // namespace fas
