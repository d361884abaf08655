// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fasvbcm/error.hpp"
#include "fasvbcm/secrecy.hpp"

namespace fas::cli {

namespace {

struct FlagKey {
    const char* flag;
    const char* key;
};

// value flags forwarded to config keys
constexpr FlagKey kValueFlags[] = {
    {"--n", "scenario.n_alice"},
    {"--w", "scenario.w_alice"},
    {"--eta", "scenario.eta_alice"},
    {"--n-eve", "scenario.n_eve"},
    {"--w-eve", "scenario.w_eve"},
    {"--eta-eve", "scenario.eta_eve"},
    {"--noise", "scenario.noise_alice"},
    {"--noise-eve", "scenario.noise_eve"},
    {"--rs", "scenario.secrecy_rate"},
    {"--snr-min", "scenario.snr_min_db"},
    {"--snr-max", "scenario.snr_max_db"},
    {"--snr-step", "scenario.snr_step_db"},
    {"--d", "scenario.blocks"},
    {"--max-blocks", "scenario.max_blocks"},
    {"--rho-mode", "scenario.rho_mode"},
    {"--model", "scenario.model"},
    {"--rho-fixed", "scenario.rho_fixed"},
    {"--points", "scenario.dist_points"},
    {"--range", "quadrature.range_multiplier"},
    {"--up", "quadrature.outer_order"},
    {"--ul", "quadrature.inner_order"},
    {"--u", "quadrature.sop_order"},
    {"--samples", "mc.samples"},
    {"--seed", "mc.seed"},
    {"--threads", "mc.threads"},
    {"--algo", "optimize.algo"},
    {"--grid", "optimize.grid"},
    {"--lr", "optimize.lr"},
    {"--iters", "optimize.iters"},
    {"--fd-step", "optimize.fd_step"},
    {"--probe-interval", "optimize.probe_interval"},
    {"--grad-tol", "optimize.grad_tol"},
    {"--p-min", "optimize.p_min"},
    {"--p-max", "optimize.p_max"},
    {"--n-min", "optimize.n_min"},
    {"--n-max", "optimize.n_max"},
    {"--port-cap", "optimize.port_cap"},
    {"--init-ports", "optimize.init_ports"},
    {"--init-power", "optimize.init_power"},
    {"--output", "output.path"},
    {"--trace", "output.trace"},
};

constexpr FlagKey kSwitches[] = {
    {"--analytic-grad", "optimize.analytic_grad"},
    {"--symmetric-probe", "optimize.symmetric_probe"},
};

constexpr const char* kCommands[] = {"fit", "spectrum", "dist", "asc", "sop", "mc", "optimize", "reproduce", "validate"};

const char* kFooter = R"(Commands and CSV columns (every CSV starts with '#' lines echoing the version,
command and resolved config):
  fit        block,size,rho,dominant           results: D, distance, error_evaluations
  spectrum   index,eigenvalue,normalized,model
  dist [alice|eve]  x,cdf,pdf
  asc        snr_db,power,asc,gradient
  sop        snr_db,power,sop
  mc         snr_db,power,metric,mean,std_error,ci95_low,ci95_high,n,seed
  optimize   algo,best_num_ports,best_power,best_asc,objective_evaluations,iterations
             (trace CSV: iteration,ports,power,value,probe_accepted)
  reproduce fig2..fig8   figure data; see the '# note' lines for assumptions
  validate   check,passed,value,limit
Exit codes: 0 success, 2 configuration error, 3 numerical contract violation.
Precedence: defaults < FAS_SEED < --config file < --set < flags.)";

int config_int(const RunConfig& cfg, std::string_view key, long long lo, long long hi)
{
    const long long v = cfg.integer(key);
    if (v < lo || v > hi)
        throw ConfigError("config key '" + std::string(key) + "' must lie in [" + std::to_string(lo) + ", "
                          + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file)
        throw ConfigError("cannot write '" + path + "'");
    file << text;
}

CsvDocument cmd_fit(const Request& req)
{
    const RunConfig& cfg = req.config;
    const UserModel model = build_user_model(alice_geometry(cfg), model_policy(cfg));
    CsvDocument doc = make_document(req);
    doc.columns = {"block", "size", "rho", "dominant"};
    const BlockPartition& p = model.partition;
    for (std::size_t d = 0; d < p.blocks.size(); ++d)
        doc.add_row({std::to_string(d + 1), std::to_string(p.blocks[d].size), format_number(p.blocks[d].rho),
                     format_number(p.blocks[d].dominant)});
    doc.add_result("D", std::to_string(p.block_count()));
    doc.add_result("distance", format_number(p.distance));
    doc.add_result("error_evaluations", std::to_string(p.error_evaluations));
    doc.add_result("mode", std::string(to_string(p.mode)));
    return doc;
}

CsvDocument cmd_spectrum(const Request& req)
{
    const RunConfig& cfg = req.config;
    const UserModel model = build_user_model(alice_geometry(cfg), model_policy(cfg));
    const std::vector<double> fitted = model_eigenvalues(model.partition);
    CsvDocument doc = make_document(req);
    doc.columns = {"index", "eigenvalue", "normalized", "model"};
    for (std::size_t i = 0; i < model.spectrum.dim(); ++i) {
        const double v = model.spectrum.eigenvalues[i];
        doc.add_row({std::to_string(i + 1), format_number(v), format_number(v / model.spectrum.mean_gain),
                     format_number(fitted[i])});
    }
    doc.add_result("distance", format_number(model.partition.distance));
    return doc;
}

CsvDocument cmd_dist(const Request& req)
{
    const RunConfig& cfg = req.config;
    const std::string user = req.target.empty() ? "alice" : req.target;
    if (user != "alice" && user != "eve")
        throw ConfigError("dist: user must be 'alice' or 'eve'");
    const FasGeometry geom = user == "alice" ? alice_geometry(cfg) : eve_geometry(cfg);
    const UserModel model = build_user_model(geom, model_policy(cfg));
    const int points = config_int(cfg, "scenario.dist_points", 2, 100000);
    const double top = cfg.real("quadrature.range_multiplier") * std::sqrt(geom.mean_gain);
    CsvDocument doc = make_document(req);
    doc.notes.push_back("user=" + user + "; x spans [0, h sqrt(eta)]");
    doc.columns = {"x", "cdf", "pdf"};
    for (int i = 0; i < points; ++i) {
        const double x = top * i / (points - 1);
        doc.add_row({format_number(x), format_number(model.distribution->cdf(x)),
                     format_number(model.distribution->pdf(x))});
    }
    return doc;
}

CsvDocument cmd_asc(const Request& req)
{
    const RunConfig& cfg = req.config;
    const UserModel alice = build_user_model(alice_geometry(cfg), model_policy(cfg));
    const UserModel eve = build_user_model(eve_geometry(cfg), model_policy(cfg));
    const double na = cfg.real("scenario.noise_alice");
    const double ne = cfg.real("scenario.noise_eve");
    const AscKernel kernel(*alice.distribution, *eve.distribution, na, ne, quadrature(cfg));
    CsvDocument doc = make_document(req);
    doc.columns = {"snr_db", "power", "asc", "gradient"};
    for (double snr : snr_grid(cfg)) {
        const double p = power_from_snr(snr, na);
        doc.add_row({format_number(snr), format_number(p), format_number(kernel.asc(p)),
                     format_number(kernel.gradient(p))});
    }
    return doc;
}

CsvDocument cmd_sop(const Request& req)
{
    const RunConfig& cfg = req.config;
    const UserModel alice = build_user_model(alice_geometry(cfg), model_policy(cfg));
    const UserModel eve = build_user_model(eve_geometry(cfg), model_policy(cfg));
    const double na = cfg.real("scenario.noise_alice");
    const double ne = cfg.real("scenario.noise_eve");
    const double rs = cfg.real("scenario.secrecy_rate");
    const SopKernel kernel(alice.distribution, *eve.distribution, na, ne, quadrature(cfg));
    CsvDocument doc = make_document(req);
    doc.columns = {"snr_db", "power", "sop"};
    for (double snr : snr_grid(cfg)) {
        const double p = power_from_snr(snr, na);
        doc.add_row({format_number(snr), format_number(p), format_number(kernel.sop(p, rs))});
    }
    return doc;
}

CsvDocument cmd_mc(const Request& req)
{
    const RunConfig& cfg = req.config;
    const McSettings settings = mc_settings(cfg);
    const PairedAmplitudes samples =
        draw_paired_amplitudes(build_covariance(alice_geometry(cfg)), build_covariance(eve_geometry(cfg)), settings);
    const double na = cfg.real("scenario.noise_alice");
    const double ne = cfg.real("scenario.noise_eve");
    const double rs = cfg.real("scenario.secrecy_rate");
    CsvDocument doc = make_document(req);
    doc.notes.push_back("draws are shared across SNR points; Alice uses stream 0, Eve stream 1");
    doc.columns = {"snr_db", "power", "metric", "mean", "std_error", "ci95_low", "ci95_high", "n", "seed"};
    for (double snr : snr_grid(cfg)) {
        const double p = power_from_snr(snr, na);
        const McEstimate asc = asc_estimate(samples, p, na, ne);
        const McEstimate sop = sop_estimate(samples, p, na, ne, rs);
        for (const auto& [name, e] : {std::pair{"asc", asc}, std::pair{"sop", sop}})
            doc.add_row({format_number(snr), format_number(p), name, format_number(e.mean), format_number(e.std_error),
                         format_number(e.ci95_low), format_number(e.ci95_high), std::to_string(e.num_samples),
                         std::to_string(settings.seed)});
    }
    return doc;
}

CsvDocument cmd_optimize(const Request& req, std::string& trace_text)
{
    const RunConfig& cfg = req.config;
    const OptEnvironment env = opt_environment(cfg, eve_geometry(cfg).num_ports, cfg.real("scenario.w_alice"));
    const AscObjective objective(env);
    const std::string algo = cfg.text("optimize.algo");
    OptResult result;
    CsvDocument doc = make_document(req);
    if (algo == "gs") {
        result = grid_search(objective, grid_spec(cfg));
    } else {
        const auto init_ports = cfg.integer_or_auto("optimize.init_ports");
        const auto init_power = cfg.real_or_none("optimize.init_power");
        const int n0 = init_ports ? static_cast<int>(*init_ports) : env.bounds.ports_min;
        const double p0 = init_power ? *init_power : 0.5 * (env.bounds.power_min + env.bounds.power_max);
        doc.notes.push_back("gradient ascent start N_A=" + std::to_string(n0) + " P=" + format_number(p0));
        result = gradient_ascent(objective, gradient_spec(cfg), std::pair{n0, p0});
    }
    if (env.bounds.ports_max < cfg.integer("optimize.n_max"))
        doc.notes.push_back("N_A_max lowered to " + std::to_string(env.bounds.ports_max) + " by the total port cap");
    doc.columns = {"algo", "best_num_ports", "best_power", "best_asc", "objective_evaluations", "iterations"};
    doc.add_row({algo, std::to_string(result.best_num_ports), format_number(result.best_power),
                 format_number(result.best_asc), std::to_string(result.objective_evaluations),
                 std::to_string(result.iterations)});
    doc.add_result("gradient_evaluations", std::to_string(result.gradient_evaluations));
    doc.add_result("probe_evaluations", std::to_string(result.probe_evaluations));
    doc.add_result("tracking_evaluations", std::to_string(result.tracking_evaluations));

    if (cfg.text("output.trace") != "-") {
        CsvDocument trace = make_document(req);
        trace.columns = {"iteration", "ports", "power", "value", "probe_accepted"};
        for (const TracePoint& t : result.trace)
            trace.add_row({std::to_string(t.iteration), std::to_string(t.ports), format_number(t.power),
                           format_number(t.value), t.probe_accepted ? "1" : "0"});
        std::ostringstream ss;
        write_csv(ss, trace);
        trace_text = ss.str();
    }
    return doc;
}

}  // namespace

FasGeometry alice_geometry(const RunConfig& cfg)
{
    FasGeometry g{config_int(cfg, "scenario.n_alice", 2, 4096), cfg.real("scenario.w_alice"),
                  cfg.real("scenario.eta_alice")};
    g.validate();
    return g;
}

FasGeometry eve_geometry(const RunConfig& cfg)
{
    FasGeometry g{config_int(cfg, "scenario.n_eve", 2, 4096), cfg.real("scenario.w_eve"),
                  cfg.real("scenario.eta_eve")};
    g.validate();
    return g;
}

ModelPolicy model_policy(const RunConfig& cfg)
{
    ModelPolicy p;
    p.kind = parse_model_kind(cfg.text("scenario.model"));
    p.mode = parse_rho_mode(cfg.text("scenario.rho_mode"));
    const auto blocks = cfg.integer_or_auto("scenario.blocks");
    p.blocks = blocks ? static_cast<int>(*blocks) : 0;
    if (blocks && *blocks < 1)
        throw ConfigError("scenario.blocks must be positive or 'auto'");
    p.max_blocks = config_int(cfg, "scenario.max_blocks", 0, 4096);
    p.fixed_rho = cfg.real_or_none("scenario.rho_fixed");
    p.outer.nodes = config_int(cfg, "quadrature.theta_nodes", 2, 4096);
    p.outer.tail_mass = cfg.real("quadrature.theta_tail");
    p.validate();
    return p;
}

QuadratureSettings quadrature(const RunConfig& cfg)
{
    QuadratureSettings q;
    q.range_multiplier = cfg.real("quadrature.range_multiplier");
    q.outer_order = config_int(cfg, "quadrature.outer_order", 4, 100000);
    q.inner_order = config_int(cfg, "quadrature.inner_order", 4, 100000);
    q.sop_order = config_int(cfg, "quadrature.sop_order", 4, 100000);
    q.validate();
    return q;
}

McSettings mc_settings(const RunConfig& cfg)
{
    McSettings s;
    s.num_samples = cfg.integer("mc.samples");
    const long long seed = cfg.integer("mc.seed");
    if (seed < 0)
        throw ConfigError("mc.seed must be non-negative");
    s.seed = static_cast<std::uint64_t>(seed);
    s.chunk_size = config_int(cfg, "mc.chunk", 1, 1 << 24);
    s.threads = config_int(cfg, "mc.threads", 0, 1024);
    s.validate();
    return s;
}

GridSpec grid_spec(const RunConfig& cfg)
{
    GridSpec g;
    g.resolution = config_int(cfg, "optimize.grid", 2, 1000000);
    g.threads = config_int(cfg, "mc.threads", 0, 1024);
    return g;
}

GradientSpec gradient_spec(const RunConfig& cfg)
{
    GradientSpec g;
    g.learning_rate = cfg.real("optimize.lr");
    g.max_iters = config_int(cfg, "optimize.iters", 1, 100000000);
    g.fd_step = cfg.real("optimize.fd_step");
    g.probe_interval = config_int(cfg, "optimize.probe_interval", 1, 100000000);
    g.grad_tolerance = cfg.real("optimize.grad_tol");
    g.analytic_gradient = cfg.boolean("optimize.analytic_grad");
    g.symmetric_probe = cfg.boolean("optimize.symmetric_probe");
    g.validate();
    return g;
}

OptEnvironment opt_environment(const RunConfig& cfg, int eve_ports, double aperture)
{
    OptEnvironment env;
    env.eve = FasGeometry{eve_ports, aperture, cfg.real("scenario.eta_eve")};
    env.alice_aperture = aperture;
    env.alice_gain = cfg.real("scenario.eta_alice");
    env.noise_alice = cfg.real("scenario.noise_alice");
    env.noise_eve = cfg.real("scenario.noise_eve");
    env.quad = quadrature(cfg);
    env.policy = model_policy(cfg);
    env.bounds.power_min = cfg.real("optimize.p_min");
    env.bounds.power_max = cfg.real("optimize.p_max");
    env.bounds.ports_min = config_int(cfg, "optimize.n_min", 2, 4096);
    env.bounds.total_port_cap = config_int(cfg, "optimize.port_cap", 2, 8192);
    env.bounds.ports_max =
        std::min(config_int(cfg, "optimize.n_max", 2, 4096), env.bounds.total_port_cap - eve_ports);
    if (env.bounds.ports_max < env.bounds.ports_min)
        throw ConfigError("no N_A satisfies both n_min and the total port cap");
    env.validate();
    return env;
}

std::vector<double> snr_grid(const RunConfig& cfg)
{
    const double lo = cfg.real("scenario.snr_min_db");
    const double hi = cfg.real("scenario.snr_max_db");
    const double step = cfg.real("scenario.snr_step_db");
    if (hi < lo)
        throw ConfigError("scenario.snr_max_db must not be below snr_min_db");
    if (!(step > 0.0))
        throw ConfigError("scenario.snr_step_db must be positive");
    std::vector<double> grid;
    const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 100000)
        throw ConfigError("SNR sweep has too many points");
    for (long long i = 0; i < count; ++i)
        grid.push_back(lo + static_cast<double>(i) * step);
    return grid;
}

double power_from_snr(double snr_db, double noise_alice)
{
    return std::pow(10.0, snr_db / 10.0) * noise_alice;
}

CsvDocument make_document(const Request& request)
{
    CsvDocument doc;
    doc.version = std::string(kVersion);
    doc.command = request.target.empty() ? request.command : request.command + " " + request.target;
    doc.config = request.config;
    return doc;
}

bool parse_request(int argc, const char* const* argv, Request& request, std::ostream& out)
{
    CLI::App app{"Secrecy analysis of fluid antenna systems with block-correlation channel models", "fasvbcm"};
    app.footer(kFooter);
    app.add_option("command", request.command, "fit|spectrum|dist|asc|sop|mc|optimize|reproduce|validate")
        ->required();
    app.add_option("target", request.target, "figure for reproduce (fig2..fig8), user for dist (alice|eve)");
    std::string config_path;
    app.add_option("--config", config_path, "INI configuration file");
    std::vector<std::string> assignments;
    app.add_option("--set", assignments, "section.key=value override (repeatable)");
    std::string snr;
    app.add_option("--snr", snr, "single SNR in dB (sets snr_min_db and snr_max_db)");

    std::vector<std::string> values(std::size(kValueFlags));
    std::vector<CLI::Option*> value_opts;
    for (std::size_t i = 0; i < std::size(kValueFlags); ++i)
        value_opts.push_back(app.add_option(kValueFlags[i].flag, values[i], kValueFlags[i].key));
    std::vector<CLI::Option*> switch_opts;
    for (const FlagKey& s : kSwitches)
        switch_opts.push_back(app.add_flag(s.flag, s.key));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return false;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    if (std::find(std::begin(kCommands), std::end(kCommands), request.command) == std::end(kCommands))
        throw ConfigError("unknown command '" + request.command + "'\n" + app.help());

    RunConfig& cfg = request.config;
    if (const char* env_seed = std::getenv("FAS_SEED"); env_seed != nullptr && *env_seed != '\0')
        cfg.set("mc.seed", env_seed);
    if (!config_path.empty())
        apply_ini_file(cfg, config_path);
    for (const std::string& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects section.key=value, got '" + a + "'");
        cfg.set(a.substr(0, eq), a.substr(eq + 1));
    }
    for (std::size_t i = 0; i < value_opts.size(); ++i)
        if (value_opts[i]->count() > 0)
            cfg.set(kValueFlags[i].key, values[i]);
    for (std::size_t i = 0; i < switch_opts.size(); ++i)
        if (switch_opts[i]->count() > 0)
            cfg.set(kSwitches[i].key, "true");
    if (!snr.empty()) {
        cfg.set("scenario.snr_min_db", snr);
        cfg.set("scenario.snr_max_db", snr);
    }
    return true;
}

CsvDocument execute(const Request& request)
{
    const std::string& c = request.command;
    if (c != "reproduce" && c != "dist" && !request.target.empty())
        throw ConfigError("command '" + c + "' takes no target argument");
    if (c == "fit")
        return cmd_fit(request);
    if (c == "spectrum")
        return cmd_spectrum(request);
    if (c == "dist")
        return cmd_dist(request);
    if (c == "asc")
        return cmd_asc(request);
    if (c == "sop")
        return cmd_sop(request);
    if (c == "mc")
        return cmd_mc(request);
    if (c == "optimize") {
        std::string trace;
        CsvDocument doc = cmd_optimize(request, trace);
        if (!trace.empty())
            write_text(request.config.text("output.trace"), trace, std::cout);
        return doc;
    }
    if (c == "reproduce")
        return reproduce(request);
    if (c == "validate") {
        bool passed = true;
        CsvDocument doc = validate(request, passed);
        return doc;
    }
    throw ConfigError("unknown command '" + c + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Request request;
    try {
        if (!parse_request(argc, argv, request, out))
            return exit_ok;
        int code = exit_ok;
        CsvDocument doc;
        if (request.command == "validate") {
            bool passed = true;
            doc = validate(request, passed);
            if (!passed) {
                err << "fasvbcm: validate: one or more checks failed\n";
                code = exit_numerical;
            }
        } else {
            doc = execute(request);
        }
        std::ostringstream text;
        write_csv(text, doc);
        write_text(request.config.text("output.path"), text.str(), out);
        return code;
    } catch (const ConfigError& e) {
        err << "fasvbcm: configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const DomainError& e) {
        err << "fasvbcm: invalid setting: " << e.what() << '\n';
        return exit_config;
    } catch (const NumericalError& e) {
        err << "fasvbcm: numerical contract violated: " << e.what() << '\n';
        return exit_numerical;
    }
}

}  // namespace fas::cli
