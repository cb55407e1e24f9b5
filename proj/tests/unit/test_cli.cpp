#include <doctest.h>

#include <fstream>
#include <sstream>

#include <syzmirror/cli.hpp>

#include "../support.hpp"

using namespace syzmirror;
using namespace syzmirror::cli;

namespace
{

std::string load(const std::string &name)
{
    std::ifstream in(std::string(SYZMIRROR_TEST_DATA) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char *const c3_job = R"({"toric": {"rays": [[0,0,1],[1,0,1],[0,1,1]], "u": [0,0,1],
  "max_cones": [[0,1,2]]},
  "brane": {"charges": [[-1,0,1],[-1,1,0]], "constants": ["0","1"], "av_indices": [0,2,1],
  "m0": ["1","0","0"]}, "truncation": 6})";

} // namespace

TEST_CASE("every command succeeds on the sample jobs")
{
    for (const auto &file : {"c3.json", "conifold.json", "local_p2.json"}) {
        const auto doc = load(file);
        for (const auto &cmd : command_names()) {
            CommandOptions opt;
            opt.order = 3;
            const auto r = run_command(cmd, doc, opt);
            INFO(file << " " << cmd << " " << r.output.dump());
            CHECK(r.exit_code == Success);
            CHECK(r.output.at("command") == cmd);
            CHECK(!r.pretty.empty());
        }
    }
}

TEST_CASE("validate reports CY failures with exit code 2")
{
    auto j = io::json::parse(c3_job);
    j["toric"]["u"] = {0, 0, 2};
    const auto r = run_command("validate", j.dump());
    CHECK(r.exit_code == ValidationFailure);
    CHECK(r.output.at("ok") == false);
    CHECK(r.output.at("cy").at("failures").dump().find("CY condition") != std::string::npos);
}

TEST_CASE("parse errors exit with 4 and point at the field")
{
    auto j = io::json::parse(c3_job);
    j["brane"]["constants"] = {"0", "1/0"};
    const auto r = run_command("brane-mirror", j.dump());
    CHECK(r.exit_code == ParseFailure);
    CHECK(r.output.at("error").at("where").get<std::string>().find("constants[1]") != std::string::npos);

    const auto syntax = run_command("validate", "{\"toric\": [1, 2,");
    CHECK(syntax.exit_code == ParseFailure);
    CHECK(syntax.output.at("error").at("where").get<std::string>().find("line") != std::string::npos);

    CHECK(run_command("validate", R"({"toric": {"rays": [[0,0,1]]}})").exit_code == ParseFailure);
}

TEST_CASE("precondition failures exit with 3")
{
    auto j = io::json::parse(c3_job);
    j.erase("brane");
    const auto missing = run_command("brane-mirror", j.dump());
    CHECK(missing.exit_code == ValidationFailure);
    CHECK(missing.output.at("error").at("kind") == "validation");

    CommandOptions opt;
    opt.normalization = std::pair{1, 1};
    CHECK(run_command("brane-mirror", c3_job, opt).exit_code == PreconditionFailure);
}

TEST_CASE("unknown commands are usage errors")
{
    CHECK(run_command("frobnicate", c3_job).exit_code == Failure);
}

TEST_CASE("brane-mirror output for C^3")
{
    const auto r = run_command("brane-mirror", c3_job);
    REQUIRE(r.exit_code == Success);
    const auto &out = r.output;
    CHECK(out.at("residual_zero") == true);
    const auto frame = fps::Frame::make(1, "Q", 0);
    const auto z2 = io::series_from_json(out.at("z2"), frame, 6);
    CHECK(z2 == fps::TruncatedSeries::from_terms(frame, 6, {{{0}, 1}, {{1}, -1}}));
}

TEST_CASE("disc-invariants for the conifold are integral")
{
    const auto r = run_command("disc-invariants", load("conifold.json"));
    REQUIRE(r.exit_code == Success);
    CHECK(r.output.at("integrality").at("pass") == true);
    int ones = 0;
    for (const auto &row : r.output.at("invariants")) {
        if (row.at("N") != 0) {
            CHECK(row.at("N") == 1);
            ++ones;
        }
    }
    CHECK(ones == 2);
}

TEST_CASE("output is deterministic")
{
    const auto doc = load("local_p2.json");
    for (const auto &cmd : command_names()) {
        CHECK(run_command(cmd, doc).output.dump() == run_command(cmd, doc).output.dump());
    }
}

TEST_CASE("series JSON round trip")
{
    testing::Generator g(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = g.frame(3);
        const auto s = g.series(f, g.integer(0, 6), 5);
        CHECK(io::series_from_json(io::series_to_json(s), f, s.order()) == s);
    }
}

TEST_CASE("run_cli")
{
    std::istringstream in(c3_job);
    std::ostringstream out, err;
    const char *argv[] = {"syzmirror", "curve", "--order", "2", "--output", "pretty"};
    CHECK(run_cli(6, argv, in, out, err) == Success);
    CHECK(io::json::parse(out.str()).at("order") == 2);
    CHECK(err.str().find("z1") != std::string::npos);

    std::istringstream in2(c3_job);
    std::ostringstream out2, err2;
    const char *bad[] = {"syzmirror", "curve", "--order", "zero"};
    CHECK(run_cli(4, bad, in2, out2, err2) != Success);
}
