#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "popsim/cli.hpp"

using namespace popsim;

namespace {

cli::CliCommand parse(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("popsim");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return cli::parse_args(static_cast<int>(argv.size()), argv.data());
}

int run(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("popsim");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

} // namespace

TEST_CASE("parse_args fills documented defaults") {
    const cli::CliCommand cmd = parse({"run"});
    CHECK(cmd.subcommand == "run");
    CHECK(cmd.sizes == std::vector<std::uint32_t>{256});
    CHECK(cmd.trials == 1);
    CHECK(cmd.format == "csv");
    CHECK(cmd.output.empty());
    CHECK(cmd.base.variant == Variant::las_vegas);
}

TEST_CASE("parse_args reads the documented flag set") {
    const cli::CliCommand cmd =
        parse({"run", "--variant", "las_vegas", "--n", "1024", "--seed", "7",
               "--m", "32", "--k", "3", "--level-cap", "12", "--trials", "4",
               "--max-interactions", "500000", "--snapshot-every", "2048",
               "--format", "json", "--output", "/tmp/x.json"});
    CHECK(cmd.sizes == std::vector<std::uint32_t>{1024});
    CHECK(cmd.base.seed == 7);
    CHECK(cmd.base.m == 32);
    CHECK(cmd.base.k == 3);
    CHECK(cmd.base.level_cap == 12);
    CHECK(cmd.trials == 4);
    CHECK(cmd.base.max_interactions == 500000);
    CHECK(cmd.base.snapshot_every == 2048);
    CHECK(cmd.format == "json");
    CHECK(cmd.output == "/tmp/x.json");
}

TEST_CASE("sweep accepts a comma list of sizes") {
    const cli::CliCommand cmd = parse(
        {"sweep", "--variant", "fast", "--n", "1024,4096,16384", "--trials",
         "100"});
    CHECK(cmd.subcommand == "sweep");
    CHECK(cmd.sizes == std::vector<std::uint32_t>{1024, 4096, 16384});
    CHECK(cmd.base.variant == Variant::fast);
    CHECK(cmd.trials == 100);
}

TEST_CASE("usage errors name the offending flag") {
    CHECK_THROWS_AS(parse({"run", "--n", "1"}), cli::UsageError);
    CHECK_THROWS_AS(parse({"run", "--n", "zebra"}), cli::UsageError);
    CHECK_THROWS_AS(parse({"run", "--n", "4,8"}), cli::UsageError);
    CHECK_THROWS_AS(parse({"run", "--bogus"}), cli::UsageError);
    CHECK_THROWS_AS(parse({"run", "--m", "65"}), cli::UsageError);
    CHECK_THROWS_AS(parse({"run", "--format", "xml"}), cli::UsageError);
    CHECK_THROWS_AS(parse({"run", "--variant", "nope"}), cli::UsageError);
    CHECK_THROWS_AS(parse({"verify", "--suite", "nope"}), cli::UsageError);
    CHECK_THROWS_AS(parse({}), cli::UsageError);
}

TEST_CASE("verify parses suite selection") {
    CHECK(parse({"verify"}).suite == "all");
    CHECK(parse({"verify", "--suite", "epidemic"}).suite == "epidemic");
}

TEST_CASE("config file sits between defaults and flags") {
    const std::string path = "/tmp/popsim_test_cfg.txt";
    spill(path, "# comment\nn = 512\nseed=9\ntrials=2\nvariant=junta_only\n");

    SUBCASE("file values apply when no flag is given") {
        const cli::CliCommand cmd = parse({"run", "--config", path});
        CHECK(cmd.sizes == std::vector<std::uint32_t>{512});
        CHECK(cmd.base.seed == 9);
        CHECK(cmd.trials == 2);
        CHECK(cmd.base.variant == Variant::junta_only);
    }
    SUBCASE("explicit flags beat the file") {
        const cli::CliCommand cmd =
            parse({"run", "--config", path, "--seed", "4", "--n", "256"});
        CHECK(cmd.base.seed == 4);
        CHECK(cmd.sizes == std::vector<std::uint32_t>{256});
        CHECK(cmd.trials == 2); // still from the file
    }
    SUBCASE("unknown keys and bad lines are usage errors") {
        spill(path, "bogus_key=1\n");
        CHECK_THROWS_AS(parse({"run", "--config", path}), cli::UsageError);
        spill(path, "just a line\n");
        CHECK_THROWS_AS(parse({"run", "--config", path}), cli::UsageError);
        CHECK_THROWS_AS(parse({"run", "--config", "/tmp/no_such_cfg"}),
                        cli::UsageError);
    }
    std::remove(path.c_str());
}

TEST_CASE("the same command writes identical bytes") {
    const std::string a = "/tmp/popsim_test_a.csv";
    const std::string b = "/tmp/popsim_test_b.csv";
    const std::vector<std::string> args = {
        "sweep", "--variant", "slow_only", "--n", "4,8",
        "--trials", "3", "--seed", "11", "--output"};
    std::vector<std::string> first = args;
    first.push_back(a);
    std::vector<std::string> second = args;
    second.push_back(b);

    REQUIRE(run(first) == 0);
    REQUIRE(run(second) == 0);
    const std::string out = slurp(a);
    CHECK(out == slurp(b));

    // one header plus one row per (size, trial)
    CHECK(std::count(out.begin(), out.end(), '\n') == 1 + 2 * 3);
    CHECK(out.rfind("seed,n,m,k,variant,", 0) == 0);

    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("json output is an array with one record per trial") {
    const std::string path = "/tmp/popsim_test.json";
    REQUIRE(run({"run", "--variant", "epidemic_only", "--n", "64", "--trials",
                 "2", "--seed", "5", "--format", "json", "--output", path}) ==
            0);
    const std::string out = slurp(path);
    CHECK(out.rfind("[", 0) == 0);
    CHECK(out.find("\"variant\":\"epidemic_only\"") != std::string::npos);
    CHECK(std::count(out.begin(), out.end(), '{') == 2);
    std::remove(path.c_str());
}

TEST_CASE("exit codes follow the contract") {
    CHECK(run({"run", "--n", "1"}) == 2);
    CHECK(run({"nonsense"}) == 2);
    CHECK(run({"--help"}) == 0);
    CHECK(run({"run", "--variant", "slow_only", "--n", "4", "--output",
               "/no_such_dir/out.csv"}) == 1);
}
