// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/secrecy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "fasvbcm/error.hpp"
#include "fasvbcm/specfun.hpp"

namespace fas {

namespace {

constexpr double kRangeSlack = 1e-6;

double rate_slope(double gain, double power)
{
    // d/dP log2(1 + P g)
    return gain / ((1.0 + power * gain) * std::numbers::ln2);
}

void check_power(double power)
{
    if (!(power >= 0.0) || !std::isfinite(power))
        throw DomainError("transmit power must be finite and non-negative");
}

}  // namespace

void QuadratureSettings::validate() const
{
    if (!(range_multiplier >= 4.0))
        throw DomainError("quadrature range multiplier must be at least 4");
    if (outer_order < 4 || inner_order < 4 || sop_order < 4)
        throw DomainError("quadrature orders must be at least 4");
}

void SecrecyScenario::validate() const
{
    if (!(power > 0.0) || !std::isfinite(power))
        throw DomainError("SecrecyScenario: power must be positive");
    if (!(noise_alice > 0.0) || !(noise_eve > 0.0))
        throw DomainError("SecrecyScenario: noise variances must be positive");
    if (!(secrecy_rate >= 0.0) || !std::isfinite(secrecy_rate))
        throw DomainError("SecrecyScenario: secrecy rate must be non-negative");
    if (!alice || !eve)
        throw DomainError("SecrecyScenario: both amplitude distributions are required");
}

double capacity(double snr)
{
    if (snr < 0.0 || std::isnan(snr))
        throw DomainError("capacity: SNR must be non-negative");
    return std::log1p(snr) / std::numbers::ln2;
}

AscKernel::AscKernel(const AmplitudeDistribution& alice, const AmplitudeDistribution& eve, double noise_alice,
                     double noise_eve, const QuadratureSettings& quad)
    : noise_alice_(noise_alice), noise_eve_(noise_eve)
{
    quad.validate();
    if (!(noise_alice > 0.0) || !(noise_eve > 0.0))
        throw DomainError("AscKernel: noise variances must be positive");
    range_ = quad.range_multiplier * std::sqrt(alice.mean_gain());
    const double ratio = std::sqrt(noise_eve / noise_alice);  // sigma_E / sigma_A
    const ChebyshevRule outer = chebyshev_rule(static_cast<std::size_t>(quad.outer_order));
    const ChebyshevRule inner = chebyshev_rule(static_cast<std::size_t>(quad.inner_order));

    const std::size_t up = outer.order;
    const std::size_t ul = inner.order;
    beta_.resize(up);
    first_weight_.resize(up);
    chi_.resize(up * ul);
    second_weight_.resize(up * ul);
    for (std::size_t p = 0; p < up; ++p) {
        const double beta = 0.5 * range_ * (outer.nodes[p] + 1.0);
        const double outer_weight = 0.5 * range_ * outer.plain_weight(p);
        const double f_alice = alice.pdf(beta);
        beta_[p] = beta;
        first_weight_[p] = outer_weight * f_alice * eve.cdf(ratio * beta);
        // inner variable y = s x (q + 1)/2, dy = (s x / 2) dq
        const double inner_span = 0.5 * ratio * beta;
        for (std::size_t l = 0; l < ul; ++l) {
            const double chi = inner_span * (inner.nodes[l] + 1.0);
            const double inner_weight = inner_span * inner.plain_weight(l);
            chi_[p * ul + l] = chi;
            second_weight_[p * ul + l] = f_alice == 0.0 ? 0.0 : outer_weight * inner_weight * f_alice * eve.pdf(chi);
        }
    }
}

double AscKernel::first_component(double power) const
{
    check_power(power);
    std::vector<double> terms(beta_.size());
    for (std::size_t p = 0; p < beta_.size(); ++p)
        terms[p] = first_weight_[p] * capacity(power * beta_[p] * beta_[p] / noise_alice_);
    return pairwise_sum(terms);
}

double AscKernel::second_component(double power) const
{
    check_power(power);
    std::vector<double> terms(chi_.size());
    for (std::size_t i = 0; i < chi_.size(); ++i)
        terms[i] = second_weight_[i] * capacity(power * chi_[i] * chi_[i] / noise_eve_);
    return pairwise_sum(terms);
}

double AscKernel::raw(double power) const
{
    return first_component(power) - second_component(power);
}

double AscKernel::asc(double power) const
{
    const double value = raw(power);
    const double upper = capacity(power * range_ * range_ / noise_alice_);
    if (value < -kRangeSlack || value > upper + kRangeSlack)
        warn("ASC quadrature value " + std::to_string(value) + " outside [0, " + std::to_string(upper) + "]");
    return std::clamp(value, 0.0, upper);
}

double AscKernel::gradient(double power) const
{
    check_power(power);
    std::vector<double> terms(beta_.size() + chi_.size());
    for (std::size_t p = 0; p < beta_.size(); ++p)
        terms[p] = first_weight_[p] * rate_slope(beta_[p] * beta_[p] / noise_alice_, power);
    for (std::size_t i = 0; i < chi_.size(); ++i)
        terms[beta_.size() + i] = -second_weight_[i] * rate_slope(chi_[i] * chi_[i] / noise_eve_, power);
    return pairwise_sum(terms);
}

SopKernel::SopKernel(std::shared_ptr<const AmplitudeDistribution> alice, const AmplitudeDistribution& eve,
                     double noise_alice, double noise_eve, const QuadratureSettings& quad)
    : alice_(std::move(alice)), noise_alice_(noise_alice), noise_eve_(noise_eve)
{
    quad.validate();
    if (!alice_)
        throw DomainError("SopKernel: Alice's distribution is required");
    if (!(noise_alice > 0.0) || !(noise_eve > 0.0))
        throw DomainError("SopKernel: noise variances must be positive");
    // the integration variable is Eve's amplitude, so the range follows Eve's gain
    const double range = quad.range_multiplier * std::sqrt(eve.mean_gain());
    const ChebyshevRule rule = chebyshev_rule(static_cast<std::size_t>(quad.sop_order));
    beta_.resize(rule.order);
    weight_.resize(rule.order);
    for (std::size_t p = 0; p < rule.order; ++p) {
        const double beta = 0.5 * range * (rule.nodes[p] + 1.0);
        beta_[p] = beta;
        weight_[p] = 0.5 * range * rule.plain_weight(p) * eve.pdf(beta);
    }
}

double SopKernel::raw(double power, double secrecy_rate) const
{
    if (!(power > 0.0) || !std::isfinite(power))
        throw DomainError("SOP: power must be positive");
    if (!(secrecy_rate >= 0.0) || !std::isfinite(secrecy_rate))
        throw DomainError("SOP: secrecy rate must be non-negative");
    const double growth = std::exp2(secrecy_rate);
    std::vector<double> terms(beta_.size());
    for (std::size_t p = 0; p < beta_.size(); ++p) {
        if (weight_[p] == 0.0) {
            terms[p] = 0.0;
            continue;
        }
        const double eve_snr = power * beta_[p] * beta_[p] / noise_eve_;
        const double needed = noise_alice_ / power * (growth * (1.0 + eve_snr) - 1.0);
        assert(needed >= 0.0);
        terms[p] = weight_[p] * alice_->cdf(std::sqrt(needed));
    }
    return pairwise_sum(terms);
}

double SopKernel::sop(double power, double secrecy_rate) const
{
    const double value = raw(power, secrecy_rate);
    if (value < -kRangeSlack || value > 1.0 + kRangeSlack)
        warn("SOP quadrature value " + std::to_string(value) + " outside [0, 1]");
    return std::clamp(value, 0.0, 1.0);
}

double average_secrecy_capacity(const SecrecyScenario& scn, const QuadratureSettings& quad)
{
    scn.validate();
    return AscKernel(*scn.alice, *scn.eve, scn.noise_alice, scn.noise_eve, quad).asc(scn.power);
}

double secrecy_outage_probability(const SecrecyScenario& scn, const QuadratureSettings& quad)
{
    scn.validate();
    return SopKernel(scn.alice, *scn.eve, scn.noise_alice, scn.noise_eve, quad).sop(scn.power, scn.secrecy_rate);
}

double asc_gradient_wrt_power(const SecrecyScenario& scn, const QuadratureSettings& quad)
{
    scn.validate();
    return AscKernel(*scn.alice, *scn.eve, scn.noise_alice, scn.noise_eve, quad).gradient(scn.power);
}

}  // namespace fas
