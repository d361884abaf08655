// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fasvbcm/model.hpp"
#include "fasvbcm/secrecy.hpp"

namespace fas {

struct OptConstraints {
    double power_min = 0.1;
    double power_max = 20.0;
    int ports_min = 5;
    int ports_max = 30;
    int total_port_cap = 40;  // N_A + N_E

    void validate(int eve_ports) const;
};

struct OptEnvironment {
    FasGeometry eve{5, 3.0, 0.5};
    double alice_aperture = 3.0;
    double alice_gain = 1.0;
    double noise_alice = 1.0;
    double noise_eve = 1.0;
    QuadratureSettings quad;
    ModelPolicy policy;
    OptConstraints bounds;

    void validate() const;
};

/// Maximisation target over (N_A, P). Implementations must be safe to call concurrently.
class Objective {
public:
    virtual ~Objective() = default;
    [[nodiscard]] virtual const OptConstraints& bounds() const = 0;
    [[nodiscard]] virtual double value(int ports, double power) const = 0;
    /// Analytic dF/dP; the default throws DomainError.
    [[nodiscard]] virtual double power_gradient(int ports, double power) const;

    /// Throws DomainError naming the violated bound.
    void check_feasible(int ports, double power) const;
};

/// ASC of Alice with N_A ports against the environment's Eve, cached per N_A.
class AscObjective final : public Objective {
public:
    explicit AscObjective(OptEnvironment env);

    [[nodiscard]] const OptConstraints& bounds() const override { return env_.bounds; }
    [[nodiscard]] double value(int ports, double power) const override;
    [[nodiscard]] double power_gradient(int ports, double power) const override;

    [[nodiscard]] const OptEnvironment& environment() const noexcept { return env_; }
    [[nodiscard]] const UserModel& alice_model(int ports) const;
    [[nodiscard]] const UserModel& eve_model() const noexcept { return eve_; }

private:
    struct Entry {
        UserModel alice;
        AscKernel kernel;
    };
    const Entry& entry(int ports) const;

    OptEnvironment env_;
    UserModel eve_;
    mutable std::mutex lock_;
    mutable std::map<int, std::shared_ptr<const Entry>> cache_;
};

/// Wraps a plain function; used to exercise the optimisers on known landscapes.
class FunctionObjective final : public Objective {
public:
    using Function = std::function<double(int, double)>;
    FunctionObjective(Function f, OptConstraints bounds, Function gradient = {});

    [[nodiscard]] const OptConstraints& bounds() const override { return bounds_; }
    [[nodiscard]] double value(int ports, double power) const override;
    [[nodiscard]] double power_gradient(int ports, double power) const override;

private:
    Function f_;
    Function gradient_;
    OptConstraints bounds_;
};

struct GridSpec {
    int resolution = 30;  // G power levels
    int threads = 0;      // 0: hardware concurrency; never changes the result

    void validate() const;
};

struct GradientSpec {
    double learning_rate = 0.01;
    int max_iters = 100;
    double fd_step = 0.01;
    int probe_interval = 5;
    double grad_tolerance = 1e-6;
    bool analytic_gradient = false;
    bool symmetric_probe = false;  // also try N_A - 1

    void validate() const;
};

struct TracePoint {
    int iteration = 0;
    int ports = 0;
    double power = 0.0;
    double value = 0.0;
    bool probe_accepted = false;
};

struct OptResult {
    int best_num_ports = 0;
    double best_power = 0.0;
    double best_asc = 0.0;
    long long objective_evaluations = 0;
    long long gradient_evaluations = 0;  // finite-difference calls
    long long probe_evaluations = 0;
    long long tracking_evaluations = 0;  // value at the start point and after each update
    int iterations = 0;
    bool converged = false;  // gradient tolerance reached
    std::vector<TracePoint> trace;
};

/// Evaluates every (N_A, P) on the grid; ties prefer smaller N_A, then smaller P.
OptResult grid_search(const Objective& objective, const GridSpec& spec);
OptResult grid_search(const OptEnvironment& env, const GridSpec& spec);

/// Power levels of the grid: P_min + j (P_max - P_min) / (G - 1).
std::vector<double> power_grid(const OptConstraints& bounds, int resolution);

/// Projected ascent in P with a periodic N_A + 1 probe; returns the best visited point.
/// Without init, starts at (N_A_min, midpoint of the power range).
OptResult gradient_ascent(const Objective& objective, const GradientSpec& spec,
                          std::optional<std::pair<int, double>> init = std::nullopt);
OptResult gradient_ascent(const OptEnvironment& env, const GradientSpec& spec,
                          std::optional<std::pair<int, double>> init = std::nullopt);

/// Finite-difference dF/dP with P +- step clipped into the power bounds.
double finite_difference_gradient(const Objective& objective, int ports, double power, double step);

double analytic_gradient_step(const OptEnvironment& env, int ports, double power);

}  // namespace fas
