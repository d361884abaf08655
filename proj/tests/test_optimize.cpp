// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>

#include "fasvbcm/error.hpp"
#include "fasvbcm/optimize.hpp"

using Catch::Approx;

namespace {

fas::OptConstraints power_only(double lo = 0.1, double hi = 20.0)
{
    fas::OptConstraints b;
    b.power_min = lo;
    b.power_max = hi;
    b.ports_min = 1;
    b.ports_max = 1;
    return b;
}

fas::FunctionObjective toy(fas::OptConstraints b = power_only())
{
    return fas::FunctionObjective([](int, double p) { return -(p - 7.0) * (p - 7.0); }, b,
                                  [](int, double p) { return -2.0 * (p - 7.0); });
}

fas::OptEnvironment small_env()
{
    fas::OptEnvironment env;
    env.bounds.ports_min = 5;
    env.bounds.ports_max = 8;
    return env;
}

}  // namespace

TEST_CASE("grid search evaluates every candidate once")
{
    fas::OptConstraints b = power_only();
    b.ports_min = 2;
    b.ports_max = 6;
    const fas::FunctionObjective f([](int n, double p) { return n * p; }, b);
    const fas::OptResult r = fas::grid_search(f, {7, 3});
    CHECK(r.objective_evaluations == 7 * 5);
    CHECK(r.trace.size() == 35u);
    for (const fas::TracePoint& t : r.trace)
        CHECK(r.best_asc >= t.value);
    CHECK(r.best_num_ports == 6);
    CHECK(r.best_power == 20.0);
}

TEST_CASE("grid search with two levels picks the better one")
{
    const fas::FunctionObjective f([](int, double p) { return -p; }, power_only());
    const fas::OptResult r = fas::grid_search(f, {2, 1});
    CHECK(r.objective_evaluations == 2);
    CHECK(r.best_power == 0.1);
}

TEST_CASE("grid search ties prefer fewer ports then lower power")
{
    fas::OptConstraints b = power_only();
    b.ports_min = 3;
    b.ports_max = 5;
    const fas::FunctionObjective flat([](int, double) { return 1.0; }, b);
    const fas::OptResult r = fas::grid_search(flat, {5, 2});
    CHECK(r.best_num_ports == 3);
    CHECK(r.best_power == 0.1);
}

TEST_CASE("grid search lands within half a grid step of the toy optimum")
{
    const fas::OptResult r = fas::grid_search(toy(), {100, 1});
    CHECK(std::abs(r.best_power - 7.0) <= 0.5 * 19.9 / 99.0 + 1e-12);
}

TEST_CASE("grid refinement never loses")
{
    const fas::FunctionObjective f([](int, double p) { return std::sin(p) + 0.1 * p; }, power_only());
    for (int g : {2, 5, 9, 30}) {
        const double coarse = fas::grid_search(f, {g, 1}).best_asc;
        const double fine = fas::grid_search(f, {2 * g - 1, 1}).best_asc;
        CHECK(fine >= coarse);
    }
}

TEST_CASE("power grid spacing")
{
    const std::vector<double> p = fas::power_grid(power_only(), 5);
    REQUIRE(p.size() == 5u);
    CHECK(p.front() == 0.1);
    CHECK(p.back() == Approx(20.0));
    CHECK(p[1] - p[0] == Approx(19.9 / 4.0));
}

TEST_CASE("gradient ascent converges on the toy objective for a small step")
{
    fas::GradientSpec spec;
    spec.learning_rate = 0.01;
    spec.max_iters = 1000;
    const fas::OptResult r = fas::gradient_ascent(toy(), spec, std::pair{1, 1.0});
    CHECK(std::abs(r.best_power - 7.0) < 1e-3);
    CHECK(r.converged);
}

TEST_CASE("gradient ascent on the toy objective: stable below 2/L, oscillating above")
{
    // -(P - 7)^2 has gradient Lipschitz constant L = 2
    fas::GradientSpec spec;
    spec.max_iters = 200;
    spec.analytic_gradient = true;
    spec.learning_rate = 0.9;
    const fas::OptResult stable = fas::gradient_ascent(toy(), spec, std::pair{1, 1.0});
    CHECK(stable.converged);
    CHECK(std::abs(stable.trace.back().power - 7.0) < 1e-3);

    spec.learning_rate = 1.1;
    const fas::OptResult unstable = fas::gradient_ascent(toy(), spec, std::pair{1, 6.0});
    CHECK_FALSE(unstable.converged);
    CHECK(std::abs(unstable.trace.back().power - 7.0) > 1.0);
    int sign_changes = 0;
    for (std::size_t i = 1; i < unstable.trace.size(); ++i)
        if ((unstable.trace[i].power - 7.0) * (unstable.trace[i - 1].power - 7.0) < 0.0)
            ++sign_changes;
    CHECK(sign_changes > 100);
}

TEST_CASE("gradient ascent stays clipped at the upper power bound")
{
    const fas::FunctionObjective rising([](int, double p) { return p; }, power_only(), [](int, double) { return 1.0; });
    fas::GradientSpec spec;
    spec.max_iters = 20;
    const fas::OptResult r = fas::gradient_ascent(rising, spec, std::pair{1, 20.0});
    for (const fas::TracePoint& t : r.trace)
        CHECK(t.power == 20.0);
    CHECK(r.best_power == 20.0);
}

TEST_CASE("gradient ascent evaluation accounting and probes")
{
    fas::OptConstraints b = power_only();
    b.ports_min = 2;
    b.ports_max = 10;
    const fas::FunctionObjective f([](int n, double p) { return n - 0.01 * (p - 7.0) * (p - 7.0); }, b);
    fas::GradientSpec spec;
    spec.max_iters = 23;
    spec.probe_interval = 5;
    spec.grad_tolerance = 1e-12;
    const fas::OptResult r = fas::gradient_ascent(f, spec);
    CHECK(r.iterations == 23);
    CHECK(r.gradient_evaluations == 2 * 23);
    CHECK(r.probe_evaluations == 4);
    CHECK(r.tracking_evaluations == 24);
    CHECK(r.objective_evaluations == 46 + 4 + 24);
    CHECK(r.best_num_ports == 6);
    double last_accepted = -1e300;
    for (const fas::TracePoint& t : r.trace) {
        CHECK(t.ports >= b.ports_min);
        CHECK(t.ports <= b.ports_max);
        CHECK(t.power >= b.power_min);
        CHECK(t.power <= b.power_max);
        if (t.probe_accepted) {
            CHECK(t.value > last_accepted);
            last_accepted = t.value;
        }
    }
}

TEST_CASE("infeasible points are rejected")
{
    const fas::FunctionObjective f = toy();
    fas::GradientSpec spec;
    CHECK_THROWS_AS(fas::gradient_ascent(f, spec, std::pair{1, 25.0}), fas::DomainError);
    CHECK_THROWS_AS(fas::gradient_ascent(f, spec, std::pair{2, 5.0}), fas::DomainError);
    fas::OptConstraints b;
    b.total_port_cap = 30;
    CHECK_THROWS_AS(b.validate(5), fas::DomainError);
    CHECK_THROWS_AS((fas::GridSpec{1, 0}.validate()), fas::DomainError);
}

TEST_CASE("ASC objective grows with Alice's ports and with power")
{
    fas::OptEnvironment env;
    env.bounds.ports_max = 20;
    const fas::AscObjective obj(env);
    CHECK(obj.value(20, 10.0) > obj.value(5, 10.0));
    double prev = 0.0;
    for (double p : fas::power_grid(env.bounds, 10)) {
        const double v = obj.value(10, p);
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
    CHECK(obj.power_gradient(10, env.bounds.power_min) > 0.0);
    CHECK_THROWS_AS(obj.value(21, 10.0), fas::DomainError);
}

TEST_CASE("analytic gradient matches the finite-difference gradient")
{
    const fas::OptEnvironment env = small_env();
    const fas::AscObjective obj(env);
    for (auto [n, p] : {std::pair{5, 1.0}, std::pair{6, 8.0}, std::pair{8, 15.0}}) {
        const double fd = fas::finite_difference_gradient(obj, n, p, 0.01);
        CHECK(std::abs(fas::analytic_gradient_step(env, n, p) - fd) / std::abs(fd) < 1e-3);
    }
}

TEST_CASE("monotone ASC puts the optimum on the power boundary")
{
    // no interior stationary point exists: the first-order condition is the boundary one
    const fas::OptEnvironment env = small_env();
    const fas::AscObjective obj(env);
    const fas::OptResult r = fas::grid_search(obj, {10, 1});
    CHECK(r.best_power == env.bounds.power_max);
    CHECK(obj.power_gradient(r.best_num_ports, r.best_power) > 0.0);
}

TEST_CASE("grid search dominates gradient ascent on the ASC objective")
{
    const fas::OptEnvironment env = small_env();
    const fas::AscObjective obj(env);
    const fas::OptResult gs = fas::grid_search(obj, {10, 1});
    fas::GradientSpec spec;
    spec.max_iters = 30;
    const fas::OptResult gd = fas::gradient_ascent(obj, spec);
    CHECK(gs.best_asc >= gd.best_asc);
    CHECK(gd.best_asc == Approx(obj.value(gd.best_num_ports, gd.best_power)).margin(1e-9));
}
