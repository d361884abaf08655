// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/stats.hpp"

#include <algorithm>
#include <cmath>

#include "fasvbcm/error.hpp"
#include "fasvbcm/specfun.hpp"

namespace fas {

namespace {

constexpr double kRhoFloor = 1e-9;
constexpr double kRhoCeiling = 1.0 - 1e-9;
// Widest panel of the common-component integral, in units of the scatter scale; the
// conditional CDF switches from 0 to 1 over a few scatter scales around theta = x.
constexpr double kPanelSigmas = 16.0;

void check_args(double x, double theta, double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw DomainError("rician: sigma must be positive");
    if (x < 0.0 || theta < 0.0 || !std::isfinite(x) || !std::isfinite(theta))
        throw DomainError("rician: amplitude arguments must be finite and non-negative");
}

double rayleigh_cdf(double x, double eta)
{
    return -std::expm1(-x * x / eta);
}

double rayleigh_pdf(double x, double eta)
{
    return 2.0 * x / eta * std::exp(-x * x / eta);
}

}  // namespace

void OuterIntegral::validate() const
{
    if (nodes < 2)
        throw DomainError("OuterIntegral: nodes must be at least 2");
    if (!(tail_mass > 0.0 && tail_mass < 1.0))
        throw DomainError("OuterIntegral: tail_mass must lie in (0, 1)");
}

double statistical_rho(double rho)
{
    return std::clamp(rho, 0.0, kRhoCeiling);
}

double rician_cdf(double x, double theta, double sigma)
{
    check_args(x, theta, sigma);
    if (x == 0.0)
        return 0.0;
    return std::clamp(1.0 - marcum_q1(theta / sigma, x / sigma), 0.0, 1.0);
}

double rician_pdf(double x, double theta, double sigma)
{
    check_args(x, theta, sigma);
    const double s2 = sigma * sigma;
    const double d = x - theta;
    return x / s2 * std::exp(-0.5 * d * d / s2) * bessel_i0_scaled(x * theta / s2);
}

BlockMaxDistribution::BlockMaxDistribution(BlockShape block, double mean_gain, OuterIntegral outer)
    : shape_(block), mean_gain_(mean_gain)
{
    if (block.size < 1)
        throw DomainError("block size must be positive");
    if (!(mean_gain > 0.0) || !std::isfinite(mean_gain))
        throw DomainError("mean gain must be positive");
    if (block.rho < 0.0 || block.rho > 1.0)
        throw DomainError("block correlation must lie in [0, 1]");
    outer.validate();

    const double rho = statistical_rho(block.rho);
    // L = 1 and rho -> 1 both leave a single Rayleigh amplitude
    if (block.size == 1 || rho >= kRhoCeiling) {
        regime_ = Regime::rayleigh_single;
        return;
    }
    if (rho < kRhoFloor) {
        regime_ = Regime::independent;
        return;
    }
    regime_ = Regime::correlated;
    sigma_ = std::sqrt(mean_gain * (1.0 - rho) / 2.0);
    const double common_power = mean_gain * rho;
    const double theta_max = std::sqrt(common_power * std::log(1.0 / outer.tail_mass));
    const int panels = std::max(1, static_cast<int>(std::ceil(theta_max / (kPanelSigmas * sigma_))));
    const GaussLegendreRule rule = gauss_legendre(static_cast<std::size_t>(outer.nodes));
    const double width = theta_max / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double theta = mid + 0.5 * width * rule.nodes[j];
            const double density = 2.0 * theta / common_power * std::exp(-theta * theta / common_power);
            theta_.push_back(theta);
            los_.push_back(theta / sigma_);
            weights_.push_back(0.5 * width * rule.weights[j] * density);
        }
    }
}

double BlockMaxDistribution::cdf(double x) const
{
    if (x < 0.0 || !std::isfinite(x))
        throw DomainError("amplitude must be finite and non-negative");
    if (x == 0.0)
        return 0.0;
    switch (regime_) {
    case Regime::rayleigh_single: return rayleigh_cdf(x, mean_gain_);
    case Regime::independent: return std::pow(rayleigh_cdf(x, mean_gain_), shape_.size);
    case Regime::correlated: break;
    }
    const double b = x / sigma_;
    double sum = 0.0;
    for (std::size_t j = 0; j < los_.size(); ++j) {
        const double conditional = 1.0 - marcum_q1(los_[j], b);
        sum += weights_[j] * std::pow(std::max(conditional, 0.0), shape_.size);
    }
    return std::clamp(sum, 0.0, 1.0);
}

double BlockMaxDistribution::pdf(double x) const
{
    if (x < 0.0 || !std::isfinite(x))
        throw DomainError("amplitude must be finite and non-negative");
    switch (regime_) {
    case Regime::rayleigh_single: return rayleigh_pdf(x, mean_gain_);
    case Regime::independent:
        return shape_.size * std::pow(rayleigh_cdf(x, mean_gain_), shape_.size - 1) * rayleigh_pdf(x, mean_gain_);
    case Regime::correlated: break;
    }
    if (x == 0.0)
        return 0.0;
    const double b = x / sigma_;
    double sum = 0.0;
    for (std::size_t j = 0; j < los_.size(); ++j) {
        const double conditional = std::max(1.0 - marcum_q1(los_[j], b), 0.0);
        sum += weights_[j] * shape_.size * std::pow(conditional, shape_.size - 1)
               * rician_pdf(x, theta_[j], sigma_);
    }
    return std::max(sum, 0.0);
}

double block_max_cdf(double x, BlockShape block, double mean_gain, const OuterIntegral& outer)
{
    return BlockMaxDistribution(block, mean_gain, outer).cdf(x);
}

double block_max_pdf(double x, BlockShape block, double mean_gain, const OuterIntegral& outer)
{
    return BlockMaxDistribution(block, mean_gain, outer).pdf(x);
}

AmplitudeDistribution::AmplitudeDistribution(BlockPartition partition, double mean_gain, OuterIntegral outer)
    : partition_(std::move(partition)), mean_gain_(mean_gain), outer_(outer)
{
    if (partition_.blocks.empty())
        throw DomainError("AmplitudeDistribution: partition has no blocks");
    blocks_.reserve(partition_.blocks.size());
    for (const Block& b : partition_.blocks)
        blocks_.emplace_back(BlockShape{b.size, b.rho}, mean_gain_, outer_);
}

double AmplitudeDistribution::cdf(double x) const
{
    double product = 1.0;
    for (const BlockMaxDistribution& b : blocks_)
        product *= b.cdf(x);
    return product;
}

double AmplitudeDistribution::pdf(double x) const
{
    const std::size_t n = blocks_.size();
    std::vector<double> cdfs(n);
    for (std::size_t d = 0; d < n; ++d)
        cdfs[d] = blocks_[d].cdf(x);
    double sum = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
        double others = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != d)
                others *= cdfs[j];
        if (others != 0.0)
            sum += blocks_[d].pdf(x) * others;
    }
    return sum;
}

double AmplitudeDistribution::scatter_scale(std::size_t block) const
{
    return std::sqrt(mean_gain_ * (1.0 - statistical_rho(partition_.blocks.at(block).rho)) / 2.0);
}

double AmplitudeDistribution::common_scale(std::size_t block) const
{
    return std::sqrt(mean_gain_ * statistical_rho(partition_.blocks.at(block).rho));
}

double max_amplitude_cdf(double x, const AmplitudeDistribution& dist)
{
    return dist.cdf(x);
}

double max_amplitude_pdf(double x, const AmplitudeDistribution& dist)
{
    return dist.pdf(x);
}

}  // namespace fas
