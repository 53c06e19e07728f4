#include <doctest.h>

#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "normapprox/cli.hpp"
#include "normapprox/report.hpp"

using namespace normapprox;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

double cell(const Result& r, const std::string& column, std::size_t row = 0)
{
    const auto t = report::parse_csv(r.out);
    return std::stod(t.rows.at(row).at(t.column(column)));
}

int run_binary(const std::string& args)
{
    const std::string cmd = std::string(NORMAPPROX_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("eval")
{
    const Result d2 = run({"eval", "--family", "d2", "3", "4"});
    CHECK(d2.code == 0);
    CHECK(cell(d2, "approx") == 5.0);
    CHECK(cell(d2, "exact") == 5.0);
    CHECK(cell(d2, "relative_error") == 0.0);

    const Result barni = run({"eval", "--family", "barni", "3", "4"});
    CHECK(barni.code == 0);
    CHECK(cell(barni, "approx") >= 5.0 * (1.0 - 0.0396));
    CHECK(cell(barni, "approx") <= 5.0 * (1.0 + 0.0396));

    const Result d1 = run({"eval", "--family", "d1", "1", "1", "1", "1"});
    CHECK(cell(d1, "approx") == 4.0);
    CHECK(cell(d1, "exact") == 2.0);

    CHECK(cell(run({"eval", "--family", "dinf", "1", "-7", "2"}), "approx") == 7.0);
    CHECK(cell(run({"eval", "--family", "dp", "--p", "3", "2", "2"}), "approx") ==
          doctest::Approx(std::cbrt(16.0)).epsilon(1e-5));
    CHECK(cell(run({"eval", "--family", "lambda", "--lambda", "0.5", "2", "-1"}), "approx") == 2.5);
    CHECK(cell(run({"eval", "--family", "ab", "--a", "0.5", "--b", "0.25", "1", "2"}), "approx") == 1.75);
    CHECK(cell(run({"eval", "--family", "lambda", "-3", "4"}), "exact") == 5.0);
}

TEST_CASE("eval usage errors")
{
    CHECK(run({"eval", "--family", "nope", "1", "2"}).code == 2);
    CHECK(run({"eval", "--family", "d2", "1", "x"}).code == 2);
    CHECK(run({"eval", "--family", "d2"}).code == 2);
    CHECK(run({"eval", "1", "2"}).code == 2);
    CHECK(run({"eval", "--family", "dp", "1", "2"}).code == 2);
    CHECK(run({"eval", "--family", "dp", "--p", "0.5", "1", "2"}).code == 2);
    CHECK(run({"eval", "--family", "ab", "--a", "0.5", "1", "2"}).code == 2);
    CHECK(run({"eval", "--family", "d2", "1", "nan"}).code == 2);
    const Result r = run({"eval", "--family", "nope", "1"});
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("global usage")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"mre-curve", "--bogus"}).code == 2);
    CHECK(run({"--threads", "0", "mre-curve"}).code == 2);
}

TEST_CASE("coverage")
{
    const Result r10 = run({"coverage", "--n", "10", "--epsilon", "0.1", "--budget", "100000"});
    REQUIRE(r10.code == 0);
    const auto j10 = nlohmann::json::parse(r10.out);
    CHECK(j10["deficiency_ratio"].get<double>() < 1e-6);
    for (const char* key : {"n", "epsilon", "patch_count", "expected_samples", "budget", "deficiency_ratio",
                            "tail_bound"})
        CHECK(j10.contains(key));

    const Result r2 = run({"coverage", "--n", "2", "--epsilon", "0.1", "--budget", "100000"});
    CHECK(nlohmann::json::parse(r2.out)["deficiency_ratio"].get<double>() > 100.0);

    CHECK(run({"coverage", "--n", "3", "--epsilon", "1.5"}).code == 2);
    CHECK(run({"coverage", "--n", "3"}).code == 2);
}

TEST_CASE("opcounts")
{
    for (const char* n : {"2", "4", "8", "16", "64"})
        CHECK(run({"opcounts", "--n", n}).code == 0);
    const Result r2 = run({"opcounts", "--n", "2"});
    const auto t = report::parse_csv(r2.out);
    bool found = false;
    for (const auto& row : t.rows) {
        if (row[0] != "D_lambda")
            continue;
        found = true;
        CHECK(row[t.column("abs")] == "2");
        CHECK(row[t.column("comp")] == "1");
        CHECK(row[t.column("add")] == "1");
        CHECK(row[t.column("mult")] == "1");
        CHECK(row[t.column("sqrt")] == "0");
    }
    CHECK(found);
    CHECK(run({"opcounts", "--n", "1"}).code == 2);
}

TEST_CASE("mre-curve")
{
    const Result r = run({"mre-curve"});
    REQUIRE(r.code == 0);
    const auto t = report::parse_csv(r.out);
    CHECK(t.rows.size() == 99);
    CHECK(std::fabs(cell(r, "mre_lambda") - 0.0551) < 5e-5);
    CHECK(std::fabs(cell(r, "mre_mulambda") - 0.0470) < 5e-5);
    CHECK(std::fabs(cell(r, "mre_barni") - 0.0396) < 5e-5);
    CHECK(cell(r, "mre_barni", 98) < cell(r, "mre_mulambda", 98));
    CHECK(run({"mre-curve", "--nmax", "1"}).code == 2);

    const Result full = run({"--full-precision", "mre-curve", "--nmax", "2"});
    const auto ft = report::parse_csv(full.out);
    CHECK(ft.rows[0][1].size() >= 17);
}

TEST_CASE("table3 options")
{
    const Result r = run({"table3", "--n-max", "3", "--tol", "1e-1", "--schedule", "2^16"});
    REQUIRE(r.code == 0);
    const auto t = report::parse_csv(r.out);
    CHECK(t.rows.size() == 2);
    CHECK(t.rows[0][t.column("barni_converged")] == "false");
    CHECK(t.rows[0][t.column("seed")] == std::to_string(kDefaultSeed));
    CHECK(run({"table3", "--schedule", "2^18..2^16"}).code == 2);
    CHECK(run({"table3", "--n-min", "5", "--n-max", "4"}).code == 2);

    const Result seeded = run({"--seed", "7", "table3", "--n-max", "2", "--schedule", "2^16"});
    CHECK(report::parse_csv(seeded.out).rows[0].back() == "7");
    const Result trailing = run({"table3", "--n-max", "2", "--schedule", "2^16", "--seed", "7"});
    CHECK(trailing.out == seeded.out);
}

TEST_CASE("table4 and fit-ab")
{
    const std::vector<std::string> args{"table4",         "--n-max", "3",          "--fit-samples", "5000",
                                        "--fixed-samples", "5000",   "--schedule", "2^16..2^17"};
    const Result r = run(args);
    REQUIRE(r.code == 0);
    const auto t = report::parse_csv(r.out);
    CHECK(t.rows.size() == 2);
    for (const char* col : {"fixed_are", "fixed_mre_e", "converged_are", "converged_mre_e", "fixed_raw_mre_e"})
        CHECK_NOTHROW(t.column(col));

    std::vector<std::string> threaded{"--threads", "2"};
    threaded.insert(threaded.end(), args.begin(), args.end());
    CHECK(run(threaded).out == r.out);

    const Result fit = run({"fit-ab", "--n", "4", "--fit-samples", "5000"});
    REQUIRE(fit.code == 0);
    const auto j = nlohmann::json::parse(fit.out);
    CHECK(j["a"].get<double>() > 0.0);
    CHECK(j["b"].get<double>() > 0.0);
    CHECK(j["seed"] == kDefaultSeed);
    CHECK(run({"fit-ab", "--n", "4", "--fit-samples", "10"}).code == 2);
    CHECK(run({"fit-ab", "--n", "4", "--fit-samples", "5000"}).out == fit.out);
}

TEST_CASE("installed binary exit codes")
{
    CHECK(run_binary("eval --family d2 3 4") == 0);
    CHECK(run_binary("eval --family nope 3 4") == 2);
    CHECK(run_binary("opcounts --n 8") == 0);
    CHECK(run_binary("coverage --n 3 --epsilon 1.5") == 2);
}
