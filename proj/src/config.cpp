// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

namespace fas {

namespace {

const ConfigKey* find_key(std::string_view name)
{
    const auto& schema = config_schema();
    const auto it = std::find_if(schema.begin(), schema.end(), [&](const ConfigKey& k) { return k.name == name; });
    return it == schema.end() ? nullptr : &*it;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<long long> parse_integer(std::string_view s)
{
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

std::optional<double> parse_real(std::string_view s)
{
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string canonical(const ConfigKey& key, std::string_view value)
{
    const std::string where = "config key '" + std::string(key.name) + "': ";
    value = trim(value);
    switch (key.type) {
    case KeyType::integer:
        if (auto v = parse_integer(value))
            return std::to_string(*v);
        throw ConfigError(where + "expected an integer, got '" + std::string(value) + "'");
    case KeyType::integer_or_auto:
        if (lower(value) == "auto")
            return "auto";
        if (auto v = parse_integer(value))
            return std::to_string(*v);
        throw ConfigError(where + "expected an integer or 'auto', got '" + std::string(value) + "'");
    case KeyType::real:
        if (auto v = parse_real(value))
            return shortest_text(*v);
        throw ConfigError(where + "expected a number, got '" + std::string(value) + "'");
    case KeyType::real_or_none:
        if (lower(value) == "none")
            return "none";
        if (auto v = parse_real(value))
            return shortest_text(*v);
        throw ConfigError(where + "expected a number or 'none', got '" + std::string(value) + "'");
    case KeyType::boolean: {
        const std::string v = lower(value);
        if (v == "true" || v == "1" || v == "yes" || v == "on")
            return "true";
        if (v == "false" || v == "0" || v == "no" || v == "off")
            return "false";
        throw ConfigError(where + "expected true or false, got '" + std::string(value) + "'");
    }
    case KeyType::text:
        if (std::find(key.choices.begin(), key.choices.end(), value) != key.choices.end())
            return std::string(value);
        {
            std::string allowed;
            for (auto c : key.choices)
                allowed += (allowed.empty() ? "" : ", ") + std::string(c);
            throw ConfigError(where + "'" + std::string(value) + "' is not one of " + allowed);
        }
    case KeyType::path:
        if (value.empty())
            throw ConfigError(where + "path must not be empty");
        return std::string(value);
    }
    throw ConfigError(where + "unsupported type");
}

}  // namespace

std::string shortest_text(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

const std::vector<ConfigKey>& config_schema()
{
    using enum KeyType;
    static const std::vector<ConfigKey> schema = {
        {"scenario.n_alice", integer, "20", "Alice port count N_A"},
        {"scenario.w_alice", real, "4", "Alice aperture W_A in wavelengths"},
        {"scenario.eta_alice", real, "1", "Alice mean channel gain"},
        {"scenario.n_eve", integer, "20", "Eve port count N_E"},
        {"scenario.w_eve", real, "4", "Eve aperture W_E in wavelengths"},
        {"scenario.eta_eve", real, "0.5", "Eve mean channel gain"},
        {"scenario.noise_alice", real, "1", "Alice noise variance"},
        {"scenario.noise_eve", real, "1", "Eve noise variance"},
        {"scenario.secrecy_rate", real, "0.5", "target secrecy rate R_s, bits/s/Hz"},
        {"scenario.snr_min_db", real, "0", "first SNR of sweeps, dB (P = 10^(SNR/10) noise_alice)"},
        {"scenario.snr_max_db", real, "20", "last SNR of sweeps, dB"},
        {"scenario.snr_step_db", real, "2", "SNR sweep step, dB"},
        {"scenario.blocks", integer_or_auto, "auto", "VBCM block count D or auto"},
        {"scenario.max_blocks", integer, "0", "upper bound of the automatic D search (0: N)"},
        {"scenario.rho_mode", text, "least_squares", "block correlation solve", {"least_squares", "as_printed"}},
        {"scenario.model", text, "vbcm", "correlation model for theory", {"vbcm", "constant", "shared_rho"}},
        {"scenario.rho_fixed", real_or_none, "none", "fixed rho for the baseline models"},
        {"scenario.dist_points", integer, "101", "amplitude grid size for dist"},
        {"quadrature.range_multiplier", real, "8", "integration range H = h sqrt(eta)"},
        {"quadrature.outer_order", integer, "30", "outer Chebyshev order U_p"},
        {"quadrature.inner_order", integer, "20", "inner Chebyshev order U_l"},
        {"quadrature.sop_order", integer, "30", "SOP Chebyshev order U"},
        {"quadrature.theta_nodes", integer, "64", "Gauss-Legendre nodes per panel of the block integral"},
        {"quadrature.theta_tail", real, "1e-12", "common-component tail mass dropped"},
        {"mc.samples", integer, "50000", "Monte Carlo draws per user"},
        {"mc.seed", integer, "20240601", "base seed (FAS_SEED overrides the default)"},
        {"mc.chunk", integer, "4096", "draws per RNG substream"},
        {"mc.threads", integer, "0", "worker threads (0: all cores); never changes results"},
        {"optimize.algo", text, "gs", "optimiser", {"gs", "gd"}},
        {"optimize.grid", integer, "30", "grid resolution G"},
        {"optimize.lr", real, "0.01", "learning rate alpha"},
        {"optimize.iters", integer, "100", "maximum iterations T"},
        {"optimize.fd_step", real, "0.01", "finite-difference step epsilon"},
        {"optimize.probe_interval", integer, "5", "iterations between N_A probes"},
        {"optimize.grad_tol", real, "1e-6", "gradient magnitude stopping tolerance"},
        {"optimize.analytic_grad", boolean, "false", "use the analytic gradient instead of finite differences"},
        {"optimize.symmetric_probe", boolean, "false", "probe N_A - 1 as well as N_A + 1"},
        {"optimize.p_min", real, "0.1", "lower power bound"},
        {"optimize.p_max", real, "20", "upper power bound"},
        {"optimize.n_min", integer, "5", "lower bound on N_A"},
        {"optimize.n_max", integer, "30", "upper bound on N_A (clamped to port_cap - N_E)"},
        {"optimize.port_cap", integer, "40", "cap on N_A + N_E"},
        {"optimize.init_ports", integer_or_auto, "auto", "gradient ascent start N_A (auto: n_min)"},
        {"optimize.init_power", real_or_none, "none", "gradient ascent start P (none: mid-range)"},
        {"output.path", path, "-", "CSV destination, '-' for stdout"},
        {"output.trace", path, "-", "optimiser trace CSV, '-' for none"},
    };
    return schema;
}

RunConfig::RunConfig()
{
    for (const ConfigKey& k : config_schema())
        values_.emplace(std::string(k.name), std::string(k.default_value));
    // canonical form, so a config read back from its own echo compares equal
    for (const ConfigKey& k : config_schema())
        set(k.name, k.default_value);
}

void RunConfig::set(std::string_view key, std::string_view value)
{
    const ConfigKey* k = find_key(key);
    if (k == nullptr)
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    values_.find(key)->second = canonical(*k, value);
}

const std::string& RunConfig::raw(std::string_view key) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    return it->second;
}

const std::string& RunConfig::text(std::string_view key) const
{
    return raw(key);
}

long long RunConfig::integer(std::string_view key) const
{
    const auto v = parse_integer(raw(key));
    if (!v)
        throw ConfigError("config key '" + std::string(key) + "' is not an integer");
    return *v;
}

double RunConfig::real(std::string_view key) const
{
    const auto v = parse_real(raw(key));
    if (!v)
        throw ConfigError("config key '" + std::string(key) + "' is not a number");
    return *v;
}

bool RunConfig::boolean(std::string_view key) const
{
    return raw(key) == "true";
}

std::optional<long long> RunConfig::integer_or_auto(std::string_view key) const
{
    const std::string& v = raw(key);
    if (v == "auto")
        return std::nullopt;
    return integer(key);
}

std::optional<double> RunConfig::real_or_none(std::string_view key) const
{
    const std::string& v = raw(key);
    if (v == "none")
        return std::nullopt;
    return real(key);
}

std::vector<std::string> RunConfig::echo() const
{
    std::vector<std::string> lines;
    for (const ConfigKey& k : config_schema())
        lines.push_back(std::string(k.name) + "=" + raw(k.name));
    return lines;
}

void apply_ini(RunConfig& config, std::istream& in, std::string_view origin)
{
    std::string section;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string where = std::string(origin) + ":" + std::to_string(number) + ": ";
        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#' || s.front() == ';')
            continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError(where + "unterminated section header");
            section = std::string(trim(s.substr(1, s.size() - 2)));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where + "expected 'key = value'");
        if (section.empty())
            throw ConfigError(where + "key outside of a section");
        const std::string key = section + "." + std::string(trim(s.substr(0, eq)));
        try {
            config.set(key, trim(s.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
}

void apply_ini_file(RunConfig& config, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    apply_ini(config, in, path);
}

}  // namespace fas
