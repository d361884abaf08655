// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "fasvbcm/stats.hpp"

namespace fas {

struct QuadratureSettings {
    double range_multiplier = 8.0;  // H = h * sqrt(eta) of the integrated user
    int outer_order = 30;           // U_p
    int inner_order = 20;           // U_l
    int sop_order = 30;             // U

    void validate() const;
};

struct SecrecyScenario {
    double power = 1.0;        // transmit power P
    double noise_alice = 1.0;  // sigma_A^2
    double noise_eve = 1.0;    // sigma_E^2
    double secrecy_rate = 0.5; // R_s, bits/s/Hz
    std::shared_ptr<const AmplitudeDistribution> alice;
    std::shared_ptr<const AmplitudeDistribution> eve;

    void validate() const;
};

/// log2(1 + snr).
double capacity(double snr);

/// ASC quadrature with the amplitude densities tabulated once. The densities do not depend
/// on transmit power, so one kernel serves every power level of a (Alice, Eve, noise) setup.
class AscKernel {
public:
    AscKernel(const AmplitudeDistribution& alice, const AmplitudeDistribution& eve, double noise_alice,
              double noise_eve, const QuadratureSettings& quad);

    /// C_s^(1): legitimate rate weighted by Eve falling below the secrecy boundary.
    [[nodiscard]] double first_component(double power) const;
    /// C_s^(2): Eve's rate over the region below the secrecy boundary.
    [[nodiscard]] double second_component(double power) const;
    /// Unclipped quadrature value first - second.
    [[nodiscard]] double raw(double power) const;
    /// raw() clipped to [0, capacity(P H^2 / sigma_A^2)], warning on violations above 1e-6.
    [[nodiscard]] double asc(double power) const;
    /// d ASC / dP using the same nodes.
    [[nodiscard]] double gradient(double power) const;

    [[nodiscard]] double range() const noexcept { return range_; }

private:
    double noise_alice_;
    double noise_eve_;
    double range_;
    std::vector<double> beta_;           // outer nodes
    std::vector<double> first_weight_;   // w_p f_A(beta_p) F_E(s beta_p)
    std::vector<double> chi_;            // inner nodes, row-major (p, l)
    std::vector<double> second_weight_;  // full Jacobian weight times f_A(beta_p) f_E(chi_pl)
};

/// SOP quadrature over Eve's amplitude, with Eve's density tabulated once.
class SopKernel {
public:
    SopKernel(std::shared_ptr<const AmplitudeDistribution> alice, const AmplitudeDistribution& eve,
              double noise_alice, double noise_eve, const QuadratureSettings& quad);

    [[nodiscard]] double raw(double power, double secrecy_rate) const;
    /// raw() clipped to [0, 1], warning on violations above 1e-6.
    [[nodiscard]] double sop(double power, double secrecy_rate) const;

private:
    std::shared_ptr<const AmplitudeDistribution> alice_;
    double noise_alice_;
    double noise_eve_;
    std::vector<double> beta_;
    std::vector<double> weight_;  // w_p f_E(beta_p)
};

double average_secrecy_capacity(const SecrecyScenario& scn, const QuadratureSettings& quad = {});
double secrecy_outage_probability(const SecrecyScenario& scn, const QuadratureSettings& quad = {});
double asc_gradient_wrt_power(const SecrecyScenario& scn, const QuadratureSettings& quad = {});

}  // namespace fas
