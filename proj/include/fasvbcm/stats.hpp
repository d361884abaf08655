// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fasvbcm/vbcm.hpp"

namespace fas {

/// Settings for the integral over the block's common (Rayleigh) component.
struct OuterIntegral {
    int nodes = 64;            // Gauss-Legendre nodes per panel
    double tail_mass = 1e-12;  // Rayleigh mass dropped beyond the truncation point

    void validate() const;
};

struct BlockShape {
    int size = 1;
    double rho = 0.0;
};

/// 1 - Q1(theta/sigma, x/sigma).
double rician_cdf(double x, double theta, double sigma);

/// (x/sigma^2) exp(-(x^2+theta^2)/(2 sigma^2)) I0(x theta/sigma^2), via the scaled I0 kernel.
double rician_pdf(double x, double theta, double sigma);

/// Distribution of the largest amplitude among the ports of one constant-correlation block.
/// Node positions and mixing weights are computed once at construction.
class BlockMaxDistribution {
public:
    BlockMaxDistribution(BlockShape block, double mean_gain, OuterIntegral outer = {});

    [[nodiscard]] double cdf(double x) const;
    [[nodiscard]] double pdf(double x) const;

    [[nodiscard]] BlockShape shape() const noexcept { return shape_; }

private:
    enum class Regime { rayleigh_single, independent, correlated };

    BlockShape shape_;
    double mean_gain_;
    Regime regime_;
    double sigma_ = 0.0;
    std::vector<double> los_;      // theta_j / sigma
    std::vector<double> theta_;    // theta_j
    std::vector<double> weights_;  // quadrature weight times Rayleigh density of theta_j
};

double block_max_cdf(double x, BlockShape block, double mean_gain, const OuterIntegral& outer = {});
double block_max_pdf(double x, BlockShape block, double mean_gain, const OuterIntegral& outer = {});

/// Maximum port amplitude of a user whose correlation is modelled by a BlockPartition:
/// independent blocks, so the CDF is the product of block CDFs.
class AmplitudeDistribution {
public:
    AmplitudeDistribution(BlockPartition partition, double mean_gain, OuterIntegral outer = {});

    [[nodiscard]] double cdf(double x) const;
    [[nodiscard]] double pdf(double x) const;

    [[nodiscard]] const BlockPartition& partition() const noexcept { return partition_; }
    [[nodiscard]] double mean_gain() const noexcept { return mean_gain_; }
    [[nodiscard]] const OuterIntegral& outer() const noexcept { return outer_; }
    [[nodiscard]] const std::vector<BlockMaxDistribution>& blocks() const noexcept { return blocks_; }

    /// Per-block scatter scale sqrt(eta (1 - rho_d) / 2) with rho_d clamped for statistics.
    [[nodiscard]] double scatter_scale(std::size_t block) const;
    /// Per-block common-component scale sqrt(eta rho_d).
    [[nodiscard]] double common_scale(std::size_t block) const;

private:
    BlockPartition partition_;
    double mean_gain_;
    OuterIntegral outer_;
    std::vector<BlockMaxDistribution> blocks_;
};

double max_amplitude_cdf(double x, const AmplitudeDistribution& dist);
double max_amplitude_pdf(double x, const AmplitudeDistribution& dist);

/// Correlation used by the statistics: clamped to [0, 1 - 1e-9].
double statistical_rho(double rho);

}  // namespace fas
