// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "fasvbcm/error.hpp"

namespace fas {

namespace {

std::string num(double v)
{
    std::string s = std::to_string(v);
    while (s.size() > 1 && s.back() == '0')
        s.pop_back();
    if (!s.empty() && s.back() == '.')
        s.pop_back();
    return s;
}

}  // namespace

void OptConstraints::validate(int eve_ports) const
{
    if (!(power_min > 0.0) || !(power_min < power_max) || !std::isfinite(power_max))
        throw DomainError("power bounds must satisfy 0 < P_min < P_max");
    if (ports_min < 1 || ports_min > ports_max)
        throw DomainError("port bounds must satisfy 1 <= N_A_min <= N_A_max");
    if (ports_max + eve_ports > total_port_cap)
        throw DomainError("N_A_max + N_E = " + std::to_string(ports_max + eve_ports) + " exceeds the total port cap "
                          + std::to_string(total_port_cap));
}

void OptEnvironment::validate() const
{
    eve.validate();
    FasGeometry{bounds.ports_min, alice_aperture, alice_gain}.validate();
    if (!(noise_alice > 0.0) || !(noise_eve > 0.0))
        throw DomainError("noise variances must be positive");
    quad.validate();
    policy.validate();
    bounds.validate(eve.num_ports);
}

double Objective::power_gradient(int, double) const
{
    throw DomainError("this objective has no analytic gradient");
}

void Objective::check_feasible(int ports, double power) const
{
    const OptConstraints& b = bounds();
    if (ports < b.ports_min)
        throw DomainError("N_A = " + std::to_string(ports) + " is below N_A_min = " + std::to_string(b.ports_min));
    if (ports > b.ports_max)
        throw DomainError("N_A = " + std::to_string(ports) + " is above N_A_max = " + std::to_string(b.ports_max));
    if (!(power >= b.power_min))
        throw DomainError("P = " + num(power) + " is below P_min = " + num(b.power_min));
    if (!(power <= b.power_max))
        throw DomainError("P = " + num(power) + " is above P_max = " + num(b.power_max));
}

AscObjective::AscObjective(OptEnvironment env) : env_(std::move(env))
{
    env_.validate();
    eve_ = build_user_model(env_.eve, env_.policy);
}

const AscObjective::Entry& AscObjective::entry(int ports) const
{
    {
        std::lock_guard guard(lock_);
        if (auto it = cache_.find(ports); it != cache_.end())
            return *it->second;
    }
    // built outside the lock so different N_A can be fitted concurrently; the result is
    // deterministic, so a duplicate build by a racing thread is harmless
    UserModel alice = build_user_model({ports, env_.alice_aperture, env_.alice_gain}, env_.policy);
    AscKernel kernel(*alice.distribution, *eve_.distribution, env_.noise_alice, env_.noise_eve, env_.quad);
    auto built = std::make_shared<const Entry>(Entry{std::move(alice), std::move(kernel)});
    std::lock_guard guard(lock_);
    return *cache_.try_emplace(ports, std::move(built)).first->second;
}

double AscObjective::value(int ports, double power) const
{
    check_feasible(ports, power);
    return entry(ports).kernel.asc(power);
}

double AscObjective::power_gradient(int ports, double power) const
{
    check_feasible(ports, power);
    return entry(ports).kernel.gradient(power);
}

const UserModel& AscObjective::alice_model(int ports) const
{
    if (ports < env_.bounds.ports_min || ports > env_.bounds.ports_max)
        throw DomainError("N_A outside the port bounds");
    return entry(ports).alice;
}

FunctionObjective::FunctionObjective(Function f, OptConstraints bounds, Function gradient)
    : f_(std::move(f)), gradient_(std::move(gradient)), bounds_(bounds)
{
    if (!f_)
        throw DomainError("FunctionObjective: function is required");
    bounds_.validate(0);
}

double FunctionObjective::value(int ports, double power) const
{
    check_feasible(ports, power);
    return f_(ports, power);
}

double FunctionObjective::power_gradient(int ports, double power) const
{
    if (!gradient_)
        return Objective::power_gradient(ports, power);
    check_feasible(ports, power);
    return gradient_(ports, power);
}

void GridSpec::validate() const
{
    if (resolution < 2)
        throw DomainError("grid resolution G must be at least 2");
    if (threads < 0)
        throw DomainError("grid threads must be non-negative");
}

void GradientSpec::validate() const
{
    if (!(learning_rate > 0.0))
        throw DomainError("learning rate must be positive");
    if (max_iters < 1)
        throw DomainError("max_iters must be at least 1");
    if (!(fd_step > 0.0))
        throw DomainError("finite-difference step must be positive");
    if (probe_interval < 1)
        throw DomainError("probe interval must be at least 1");
    if (!(grad_tolerance >= 0.0))
        throw DomainError("gradient tolerance must be non-negative");
}

std::vector<double> power_grid(const OptConstraints& bounds, int resolution)
{
    if (resolution < 2)
        throw DomainError("grid resolution G must be at least 2");
    std::vector<double> grid(static_cast<std::size_t>(resolution));
    const double step = (bounds.power_max - bounds.power_min) / (resolution - 1);
    for (int j = 0; j < resolution; ++j)
        grid[j] = bounds.power_min + j * step;
    grid.back() = bounds.power_max;
    return grid;
}

OptResult grid_search(const Objective& objective, const GridSpec& spec)
{
    spec.validate();
    const OptConstraints& b = objective.bounds();
    const std::vector<double> powers = power_grid(b, spec.resolution);
    const std::size_t per_row = powers.size();
    const std::size_t rows = static_cast<std::size_t>(b.ports_max - b.ports_min + 1);
    const std::size_t total = rows * per_row;
    std::vector<double> values(total);

    // rows share an N_A, so one worker takes a whole row and the per-N_A fit happens once
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        try {
            for (std::size_t r = next++; r < rows; r = next++) {
                const int ports = b.ports_min + static_cast<int>(r);
                for (std::size_t j = 0; j < per_row; ++j)
                    values[r * per_row + j] = objective.value(ports, powers[j]);
            }
        } catch (...) {
            std::lock_guard guard(failure_lock);
            failure = std::current_exception();
        }
    };
    std::size_t threads = spec.threads > 0 ? static_cast<std::size_t>(spec.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, rows);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t)
            pool.emplace_back(worker);
        worker();
    }
    if (failure)
        std::rethrow_exception(failure);

    OptResult result;
    result.objective_evaluations = static_cast<long long>(total);
    result.tracking_evaluations = result.objective_evaluations;
    result.trace.reserve(total);
    std::size_t best = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const int ports = b.ports_min + static_cast<int>(i / per_row);
        result.trace.push_back({static_cast<int>(i), ports, powers[i % per_row], values[i], false});
        if (values[i] > values[best])
            best = i;
    }
    result.best_num_ports = b.ports_min + static_cast<int>(best / per_row);
    result.best_power = powers[best % per_row];
    result.best_asc = values[best];
    return result;
}

OptResult grid_search(const OptEnvironment& env, const GridSpec& spec)
{
    return grid_search(AscObjective(env), spec);
}

double finite_difference_gradient(const Objective& objective, int ports, double power, double step)
{
    const OptConstraints& b = objective.bounds();
    const double hi = std::min(power + step, b.power_max);
    const double lo = std::max(power - step, b.power_min);
    return (objective.value(ports, hi) - objective.value(ports, lo)) / (hi - lo);
}

OptResult gradient_ascent(const Objective& objective, const GradientSpec& spec,
                          std::optional<std::pair<int, double>> init)
{
    spec.validate();
    const OptConstraints& b = objective.bounds();
    int ports = init ? init->first : b.ports_min;
    double power = init ? init->second : 0.5 * (b.power_min + b.power_max);
    objective.check_feasible(ports, power);

    OptResult result;
    double current = objective.value(ports, power);
    ++result.tracking_evaluations;
    result.trace.push_back({0, ports, power, current, false});
    result.best_num_ports = ports;
    result.best_power = power;
    result.best_asc = current;
    auto record_best = [&] {
        if (current > result.best_asc) {
            result.best_asc = current;
            result.best_num_ports = ports;
            result.best_power = power;
        }
    };

    for (int t = 1; t <= spec.max_iters; ++t) {
        double g = 0.0;
        if (spec.analytic_gradient) {
            g = objective.power_gradient(ports, power);
        } else {
            g = finite_difference_gradient(objective, ports, power, spec.fd_step);
            result.gradient_evaluations += 2;
        }
        if (std::abs(g) < spec.grad_tolerance) {
            result.converged = true;
            break;
        }
        power = std::clamp(power + spec.learning_rate * g, b.power_min, b.power_max);
        current = objective.value(ports, power);
        ++result.tracking_evaluations;
        result.iterations = t;
        TracePoint point{t, ports, power, current, false};

        if (t % spec.probe_interval == 0) {
            int candidate_ports = ports;
            double candidate = current;
            auto probe = [&](int n) {
                if (n < b.ports_min || n > b.ports_max)
                    return;
                const double v = objective.value(n, power);
                ++result.probe_evaluations;
                if (v > candidate) {
                    candidate = v;
                    candidate_ports = n;
                }
            };
            probe(ports + 1);
            if (spec.symmetric_probe)
                probe(ports - 1);
            if (candidate_ports != ports) {
                ports = candidate_ports;
                current = candidate;
                point = {t, ports, power, current, true};
            }
        }
        result.trace.push_back(point);
        record_best();
    }
    result.objective_evaluations = result.gradient_evaluations + result.probe_evaluations + result.tracking_evaluations;
    return result;
}

OptResult gradient_ascent(const OptEnvironment& env, const GradientSpec& spec,
                          std::optional<std::pair<int, double>> init)
{
    return gradient_ascent(AscObjective(env), spec, init);
}

double analytic_gradient_step(const OptEnvironment& env, int ports, double power)
{
    return AscObjective(env).power_gradient(ports, power);
}

}  // namespace fas
