// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fasvbcm/config.hpp"
#include "fasvbcm/csv.hpp"
#include "fasvbcm/montecarlo.hpp"
#include "fasvbcm/optimize.hpp"

namespace fas::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_numerical = 3,
};

struct Request {
    std::string command;
    std::string target;  // reproduce figure or dist user
    RunConfig config;
};

/// Resolves defaults, FAS_SEED, --config file and flags (flags win). Throws ConfigError.
/// Returns false when help was requested (text already written to out).
bool parse_request(int argc, const char* const* argv, Request& request, std::ostream& out);

/// Runs a command and returns its CSV. Throws ConfigError, DomainError or NumericalError.
/// A failed validate throws NumericalError after filling `doc`.
CsvDocument execute(const Request& request);

/// Full front end: parse, execute, write output once; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Builders shared by the commands.
FasGeometry alice_geometry(const RunConfig& cfg);
FasGeometry eve_geometry(const RunConfig& cfg);
ModelPolicy model_policy(const RunConfig& cfg);
QuadratureSettings quadrature(const RunConfig& cfg);
McSettings mc_settings(const RunConfig& cfg);
GridSpec grid_spec(const RunConfig& cfg);
GradientSpec gradient_spec(const RunConfig& cfg);
/// Optimiser environment; N_A_max is lowered to port_cap - N_E when the cap binds.
OptEnvironment opt_environment(const RunConfig& cfg, int eve_ports, double aperture);
std::vector<double> snr_grid(const RunConfig& cfg);
/// P = 10^(snr_db/10) * noise_alice.
double power_from_snr(double snr_db, double noise_alice);

CsvDocument make_document(const Request& request);

CsvDocument reproduce(const Request& request);
CsvDocument validate(const Request& request, bool& all_passed);

}  // namespace fas::cli
