// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "fasvbcm/cli.hpp"
#include "fasvbcm/error.hpp"
#include "fasvbcm/secrecy.hpp"
#include "fasvbcm/specfun.hpp"

namespace fas::cli {

namespace {

struct Check {
    std::string name;
    double value;
    double limit;
};

}  // namespace

CsvDocument validate(const Request& request, bool& all_passed)
{
    const RunConfig& cfg = request.config;
    CsvDocument doc = make_document(request);
    doc.notes.push_back("passed = value <= limit");
    doc.columns = {"check", "passed", "value", "limit"};
    all_passed = true;
    auto record = [&](const std::string& name, double value, double limit) {
        const bool ok = std::isfinite(value) && value <= limit;
        all_passed = all_passed && ok;
        doc.add_row({name, ok ? "1" : "0", format_number(value), format_number(limit)});
    };
    auto guarded = [&](const std::string& name, double limit, const std::function<double()>& f) {
        double v = NAN;
        try {
            v = f();
        } catch (const std::exception& e) {
            doc.notes.push_back(name + " threw: " + e.what());
        }
        record(name, v, limit);
    };

    const FasGeometry ga = alice_geometry(cfg);
    const FasGeometry ge = eve_geometry(cfg);
    const ModelPolicy policy = model_policy(cfg);
    const QuadratureSettings quad = quadrature(cfg);
    const double na = cfg.real("scenario.noise_alice");
    const double ne = cfg.real("scenario.noise_eve");
    const double rs = cfg.real("scenario.secrecy_rate");

    guarded("bessel_j0_first_zero", 1e-12, [] { return std::abs(bessel_j0(2.404825557695773)); });
    guarded("marcum_q1_zero_los", 1e-14, [] {
        double worst = 0.0;
        for (double b = 0.0; b <= 8.0; b += 0.5)
            worst = std::max(worst, std::abs(marcum_q1(0.0, b) - std::exp(-0.5 * b * b)));
        return worst;
    });
    guarded("marcum_q1_monotone_in_b", 0.0, [] {
        double violation = 0.0;
        for (double a : {0.5, 2.0, 6.0}) {
            double prev = 1.0;
            for (double b = 0.0; b <= 12.0; b += 0.25) {
                const double q = marcum_q1(a, b);
                violation = std::max(violation, q - prev);
                prev = q;
            }
        }
        return violation;
    });
    guarded("coloring_factor_reconstruction", 1e-10, [&] {
        const Covariance cov = build_covariance(ga);
        const Matrix f = coloring_factor(cov);
        return relative_frobenius_error(multiply(f, transpose(f)), cov.entries);
    });
    guarded("spectrum_trace", 1e-10, [&] {
        const Spectrum s = eigen_spectrum(build_covariance(ga));
        double sum = 0.0;
        for (double v : s.eigenvalues)
            sum += v;
        return std::abs(sum - ga.num_ports * ga.mean_gain) / (ga.num_ports * ga.mean_gain);
    });
    guarded("fit_evaluation_count", 0.0, [&] {
        const Spectrum s = eigen_spectrum(build_covariance(ga));
        const int d = std::max(1, ga.num_ports / 4);
        const BlockPartition p = fit_partition(s, d, policy.mode);
        return std::abs(static_cast<double>(p.error_evaluations) - static_cast<double>((ga.num_ports - d) * d));
    });
    guarded("constant_spectrum_recovery", 1e-12, [] {
        const int n = 16;
        const double rho = 0.5;
        Spectrum s{std::vector<double>(n, 1.0 - rho), 1.0};
        s.eigenvalues.front() = 1.0 + (n - 1) * rho;
        const BlockPartition p = fit_partition(s, 1, RhoMode::least_squares);
        return std::max(p.distance, std::abs(p.blocks.front().rho - rho));
    });

    const UserModel alice = build_user_model(ga, policy);
    const UserModel eve = build_user_model(ge, policy);
    guarded("amplitude_cdf_monotone_in_range", 0.0, [&] {
        double violation = 0.0;
        double prev = 0.0;
        const double top = quad.range_multiplier * std::sqrt(ga.mean_gain);
        for (int i = 0; i <= 200; ++i) {
            const double c = alice.distribution->cdf(top * i / 200.0);
            violation = std::max({violation, prev - c, -c, c - 1.0});
            prev = c;
        }
        return violation;
    });
    guarded("amplitude_pdf_integrates_to_cdf", 1e-6, [&] {
        const double top = 2.0 * std::sqrt(ga.mean_gain);
        const GaussLegendreRule rule = gauss_legendre(64);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += 0.5 * top * rule.weights[i] * alice.distribution->pdf(0.5 * top * (rule.nodes[i] + 1.0));
        return std::abs(sum - alice.distribution->cdf(top));
    });

    const AscKernel asc(*alice.distribution, *eve.distribution, na, ne, quad);
    const SopKernel sop(alice.distribution, *eve.distribution, na, ne, quad);
    const std::vector<double> snrs = snr_grid(cfg);
    guarded("asc_nonnegative_nondecreasing", 1e-6, [&] {
        double violation = 0.0;
        double prev = 0.0;
        for (double snr : snrs) {
            const double v = asc.raw(power_from_snr(snr, na));
            violation = std::max({violation, -v, prev - v});
            prev = v;
        }
        return violation;
    });
    guarded("sop_in_unit_interval_nonincreasing", 1e-6, [&] {
        double violation = 0.0;
        double prev = 1.0;
        for (double snr : snrs) {
            const double v = sop.raw(power_from_snr(snr, na), rs);
            violation = std::max({violation, -v, v - 1.0, v - prev});
            prev = v;
        }
        return violation;
    });
    guarded("asc_gradient_vs_central_difference", 1e-4, [&] {
        double worst = 0.0;
        for (double p : {1.0, 5.0, 15.0}) {
            const double h = 1e-3 * p;
            const double fd = (asc.raw(p + h) - asc.raw(p - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(asc.gradient(p) - fd) / std::abs(fd));
        }
        return worst;
    });
    guarded("grid_search_toy_argmax", 0.0, [] {
        OptConstraints b;
        b.ports_min = 1;
        b.ports_max = 1;
        const FunctionObjective toy([](int, double p) { return -(p - 7.0) * (p - 7.0); }, b);
        const OptResult r = grid_search(toy, {100, 1});
        const double half_step = 0.5 * (b.power_max - b.power_min) / 99.0;
        return std::max(0.0, std::abs(r.best_power - 7.0) - half_step);
    });
    guarded("monte_carlo_thread_invariance", 0.0, [&] {
        McSettings s = mc_settings(cfg);
        s.num_samples = 5000;
        s.chunk_size = 512;
        const Covariance ca = build_covariance(ga);
        const Covariance ce = build_covariance(ge);
        s.threads = 1;
        const McEstimate one = mc_asc(ca, ce, 10.0, na, ne, s);
        s.threads = 4;
        const McEstimate four = mc_asc(ca, ce, 10.0, na, ne, s);
        return one.mean == four.mean && one.std_error == four.std_error ? 0.0 : 1.0;
    });
    return doc;
}

}  // namespace fas::cli
