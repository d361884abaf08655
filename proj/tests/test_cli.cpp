// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "fasvbcm/cli.hpp"

using Catch::Approx;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "fasvbcm");
    std::vector<const char*> argv;
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = fas::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fas::CsvDocument parse(const std::string& text)
{
    std::istringstream in(text);
    return fas::read_csv(in);
}

}  // namespace

TEST_CASE("fit output matches a direct library fit")
{
    const Outcome o = invoke({"fit", "--set", "scenario.n_alice=12", "--set", "scenario.w_alice=3"});
    REQUIRE(o.code == 0);
    const fas::CsvDocument doc = parse(o.out);
    CHECK(doc.command == "fit");
    const fas::Spectrum s = fas::eigen_spectrum(fas::build_covariance({12, 3.0, 1.0}));
    const fas::BlockPartition p = fas::fit_partition(s, fas::auto_block_count(s, 12));
    REQUIRE(doc.rows.size() == static_cast<std::size_t>(p.block_count()));
    CHECK(std::stoi(doc.result("D")) == p.block_count());
    CHECK(std::stod(doc.result("distance")) == Approx(p.distance).epsilon(1e-8));
    for (std::size_t i = 0; i < doc.rows.size(); ++i) {
        CHECK(static_cast<int>(doc.number(i, "size")) == p.blocks[i].size);
        CHECK(doc.number(i, "rho") == Approx(p.blocks[i].rho).margin(1e-8));
    }
}

TEST_CASE("config echo round-trips through the CSV header")
{
    const Outcome o = invoke({"fit", "--set", "scenario.w_alice=2.5", "--set", "mc.seed=123"});
    REQUIRE(o.code == 0);
    const fas::CsvDocument doc = parse(o.out);
    fas::RunConfig expected;
    expected.set("scenario.w_alice", "2.5");
    expected.set("mc.seed", "123");
    CHECK(doc.config == expected);
    std::ostringstream again;
    fas::write_csv(again, doc);
    CHECK(again.str() == o.out);
}

TEST_CASE("INI files and overrides compose")
{
    fas::RunConfig cfg;
    std::istringstream ini("[scenario]\nn_alice = 9\n# comment\n[mc]\nsamples=2000\n");
    fas::apply_ini(cfg, ini);
    CHECK(cfg.integer("scenario.n_alice") == 9);
    CHECK(cfg.integer("mc.samples") == 2000);
    std::istringstream bad("[scenario]\nnot_a_key = 1\n");
    CHECK_THROWS_AS(fas::apply_ini(cfg, bad), fas::ConfigError);
}

TEST_CASE("exit codes")
{
    CHECK(invoke({"fit", "--set", "bogus.key=1"}).code == fas::cli::exit_config);
    CHECK(invoke({"asc", "--set", "scenario.n_alice=1"}).code == fas::cli::exit_config);
    CHECK(invoke({"nonsense"}).code == fas::cli::exit_config);
    const Outcome ok = invoke({"asc", "--set", "scenario.n_alice=5", "--set", "scenario.n_eve=5",
                               "--set", "scenario.snr_max_db=4"});
    CHECK(ok.code == fas::cli::exit_ok);
    CHECK(parse(ok.out).rows.size() == 3u);
}

TEST_CASE("validate passes with defaults")
{
    const Outcome o = invoke({"validate"});
    CHECK(o.code == fas::cli::exit_ok);
    const fas::CsvDocument doc = parse(o.out);
    for (std::size_t i = 0; i < doc.rows.size(); ++i)
        CHECK(doc.number(i, "passed") == 1.0);
}
