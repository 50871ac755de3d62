#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "agl/analytic.hpp"
#include "agl/cli.hpp"

using namespace agl;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "agl");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("agl_test_" + name);
}

}  // namespace

TEST_CASE("analytic subcommand")
{
    const auto r = run_cli({"analytic", "--kind", "fcn-capture", "--n", "100", "--lambda", "1", "--p", "0.5", "--q", "1"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    CHECK(ls.front() == "n,node_label,analytic,bound_lower,bound_upper");
    CHECK(ls.size() == 101);
    CHECK(ls.back() == "100,n,100,,");
    CHECK(ls[1].rfind("100,1,", 0) == 0);

    const auto mitm = run_cli({"analytic", "--kind", "fcn-mitm", "--n", "4"});
    REQUIRE(mitm.code == 0);
    CHECK(lines(mitm.out).back() == "4,A,4,");
}

TEST_CASE("lemma subcommand")
{
    const auto r = run_cli({"lemma", "--n", "10000", "--n0", "10000"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "n,n0,sum,lower_env,upper_env");
    CHECK(ls[1].rfind("10000,10000,", 0) == 0);
    CHECK(run_cli({"lemma", "--n", "10", "--n0", "11"}).code == 2);
}

TEST_CASE("figure subcommand writes to --out")
{
    const auto path = temp_file("fig4.csv");
    const auto r = run_cli({"figure", "fig4", "--out", path.string(), "--n-values", "10,100"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto ls = lines(buf.str());
    CHECK(ls.front() == "series,n,node_label,analytic,bound_lower,bound_upper");
    CHECK(ls.size() == 5);
    std::filesystem::remove(path);

    CHECK(run_cli({"figure", "fig11"}).code == 2);
}

TEST_CASE("sweep subcommand")
{
    const auto r = run_cli({"sweep", "--kind", "urn-capture", "--p", "0.5", "--n-values", "100:1000:2", "--alpha", "0.5"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    CHECK(ls.front() == "n,node_label,analytic,bound_lower,bound_upper");
    CHECK(ls[1].rfind("100,10,", 0) == 0);

    const auto skipped = run_cli({"sweep", "--n-values", "3,10", "--node", "5"});
    REQUIRE(skipped.code == 0);
    CHECK(skipped.err.find("n=3") != std::string::npos);
    CHECK(run_cli({"sweep", "--n-values", "10", "--node", "zero"}).code == 2);
}

TEST_CASE("simulate and compare subcommands are seed-reproducible")
{
    const std::vector<std::string> args = {"simulate", "--kind", "urn-capture", "--n", "5", "--horizon", "500",
                                           "--reps", "3", "--seed", "42"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out).front() == "n,node_label,sim_mean,sim_ci95");
    CHECK(lines(a.out).size() == 6);

    const auto c = run_cli({"compare", "--kind", "fcn-mitm", "--n", "3", "--horizon", "500", "--reps", "2"});
    REQUIRE(c.code == 0);
    CHECK(lines(c.out).front() == "n,node_label,analytic,sim_mean,sim_ci95,rel_error,ci_covers");
    CHECK(lines(c.out).back().rfind("3,A,", 0) == 0);

    const auto idle = run_cli({"simulate", "--n", "3", "--horizon", "1e-9", "--reps", "1"});
    CHECK(idle.code == 0);
    CHECK(idle.err.find("no events") != std::string::npos);
}

TEST_CASE("configuration errors exit with code 2")
{
    const auto r = run_cli({"analytic", "--n", "1", "--p", "1.5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("n must be >= 2") != std::string::npos);
    CHECK(r.err.find("probability out of range") != std::string::npos);

    CHECK(run_cli({"analytic", "--kind", "mesh"}).code == 2);
    CHECK(run_cli({"simulate", "--coin-mode", "sometimes"}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"analytic", "--config", "/nonexistent/agl.json"}).code == 2);
    const auto help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("analytic") != std::string::npos);
}

TEST_CASE("config file, flag precedence and dump round-trip")
{
    const auto path = temp_file("cfg.json");
    {
        std::ofstream f(path);
        f << R"({"kind": "urn-capture", "n": 12, "p": 0.25, "q": 0.5, "horizon": 800, "seed": 9})";
    }
    const auto dumped = run_cli({"simulate", "--config", path.string(), "--n", "15", "--dump-config"});
    REQUIRE(dumped.code == 0);
    const RunConfig cfg = cli::parse_config_json(dumped.out);
    CHECK(cfg.spec.kind.topology == Topology::UnidirectionalRingCapture);
    CHECK(cfg.spec.n == 15);
    CHECK(cfg.spec.policy.p == 0.25);
    CHECK(cfg.sim.horizon == 800.0);
    CHECK(cfg.sim.seed == 9);
    CHECK(*cfg.sim.warmup == doctest::Approx(80.0));
    CHECK(cli::dump_config_json(cfg) == dumped.out);

    // Re-feeding the dump reproduces it exactly.
    {
        std::ofstream f(path);
        f << dumped.out;
    }
    CHECK(run_cli({"simulate", "--config", path.string(), "--dump-config"}).out == dumped.out);
    std::filesystem::remove(path);
}

TEST_CASE("config parsing rejects bad documents")
{
    CHECK_THROWS_AS(cli::parse_config_json("[1, 2]"), cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_config_json("{"), cli::ConfigError);
    try {
        cli::parse_config_json(R"({"n": "ten", "colour": 1, "kind": "star"})");
        FAIL("expected ConfigError");
    } catch (const cli::ConfigError& e) {
        CHECK(e.violations().size() == 3);
    }
}

TEST_CASE("seed default comes from AGL_SEED")
{
    ::setenv("AGL_SEED", "1234", 1);
    const auto r = run_cli({"simulate", "--dump-config"});
    ::unsetenv("AGL_SEED");
    REQUIRE(r.code == 0);
    CHECK(cli::parse_config_json(r.out).sim.seed == 1234);
    CHECK(run_cli({"simulate", "--seed", "5", "--dump-config"}).out.find("\"seed\": 5") != std::string::npos);
}

TEST_CASE("n-value lists")
{
    CHECK(cli::parse_n_values("10,20,5") == std::vector<int>{10, 20, 5});
    CHECK(cli::parse_n_values("10:40:2") == std::vector<int>{10, 20, 40});
    CHECK_THROWS_AS(cli::parse_n_values("10,x"), cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_n_values("10:40"), cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_n_values("40:10:2"), cli::ConfigError);
}

TEST_CASE("analytic rows carry every quantity")
{
    NetworkSpec spec;
    spec.kind = {Topology::FullyConnectedMitm, false};
    spec.n = 5;
    const auto rows = cli::analytic_rows(spec).rows;
    std::vector<std::string> labels;
    for (const auto& r : rows) labels.push_back(r.node_label);
    CHECK(labels == std::vector<std::string>{"1", "S2", "S3", "S4", "S1+n", "S2+n", "S3+n", "S4+n", "n", "A"});

    spec.kind = {Topology::UnidirectionalRingCapture, false};
    spec.policy = {0.5, 0.5};
    const auto ring = cli::analytic_rows(spec).rows;
    CHECK(ring[2].node_label == "3");
    CHECK(*ring[2].bound_lower <= *ring[2].analytic);
    CHECK(*ring[2].analytic <= *ring[2].bound_upper);
}
