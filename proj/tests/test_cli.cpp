#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gkcs/cli.hpp"

using namespace gkcs;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "gkcs");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("spectrum table shows the degenerate pair") {
    const Outcome o = run({"spectrum", "--B", "2", "--d", "3.14159265358979", "--m-max", "4", "--n-max", "4"});
    REQUIRE(o.code == 0);
    const auto ls = lines(o.out);
    CHECK(ls.front() == "m,n,energy,degenerate_with");
    CHECK(ls.size() == 26);
    bool found = false;
    for (const std::string& l : ls) {
        if (l.rfind("2,0,11.0000000000000", 0) == 0 && l.find("\"(0,2)\"") != std::string::npos) found = true;
    }
    CHECK(found);
}

TEST_CASE("coefficients at J = 0") {
    const Outcome o = run({"coeffs", "--class", "fixed-n", "--n", "0", "--B", "1", "--d", "3.14159265358979", "--J",
                           "0", "--alpha", "0"});
    REQUIRE(o.code == 0);
    CHECK(o.out == "i,j,re,im\n0,0,1,0\n");
}

TEST_CASE("verify-moments passes for fixed-m") {
    const Outcome o = run({"verify-moments", "--class", "fixed-m", "--m", "0", "--B", "1", "--d", "3.14159265358979",
                           "--k-max", "4"});
    CHECK(o.code == 0);
    const auto ls = lines(o.out);
    CHECK(ls.size() == 6);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        CHECK(ls[i].find(",1e-08,PASS") != std::string::npos);
    }
}

TEST_CASE("verification failure exits 1 and names the failing check") {
    const Outcome o = run({"verify-moments", "--class", "fixed-n", "--n", "0", "--k-max", "1", "--tol", "1e-30"});
    CHECK(o.code == 1);
    CHECK(o.err.find("FAIL moment gamma-type k=") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"spectrum", "--bogus"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const Outcome missing = run({"coeffs", "--class", "fixed-m", "--J", "1"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("--m") != std::string::npos);
    CHECK(run({"coeffs", "--class", "nope"}).code == 2);
    CHECK(run({"spectrum", "--B", "-1"}).code == 2);
    CHECK(run({"stats", "--class", "fixed-n", "--n", "0", "--J", "-1"}).code == 2);
    CHECK(run({"spectrum", "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("JSON schema") {
    const Outcome o = run({"verify-commutators", "--class", "fixed-n", "--n", "0", "--format", "json"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j["schema_version"] == "1");
    CHECK(j["params"]["command"] == "verify-commutators");
    CHECK(j["params"]["tol"] == 1e-8);
    REQUIRE(j["results"].is_array());
    for (const auto& r : j["results"]) {
        CHECK(r.contains("target"));
        CHECK(r.contains("computed"));
        CHECK(r.contains("abs_err"));
        CHECK(r.contains("rel_err"));
        CHECK(r["status"] == "PASS");
    }
}

TEST_CASE("stats sweep is ordered by J") {
    const Outcome o = run({"stats", "--class", "fixed-n-shifted", "--n", "0", "--B", "2", "--J", "5", "0.5", "1"});
    REQUIRE(o.code == 0);
    const auto ls = lines(o.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[1].rfind("0.5,", 0) == 0);
    CHECK(ls[2].rfind("1,", 0) == 0);
    CHECK(ls[3].rfind("5,", 0) == 0);
    CHECK(ls[1].find(",3,3,") != std::string::npos);  // Q = 2B - 1
}

TEST_CASE("overlap and resolution subcommands") {
    const Outcome ov = run({"overlap", "--class", "product", "--J1", "1", "--J2", "2", "--J-prime", "1.5",
                            "--alpha-prime", "0.4", "--format", "json"});
    REQUIRE(ov.code == 0);
    const auto j = nlohmann::json::parse(ov.out);
    CHECK(j["results"][0]["closed_abs_diff"].get<double>() < 1e-10);
    const Outcome res = run({"verify-resolution", "--class", "nested-alt-phase", "--k-max", "2"});
    CHECK(res.code == 0);
    CHECK(lines(res.out).size() == 10);
    const Outcome orth = run({"verify-orthonormality", "--m-max", "1", "--l-max", "1", "--n-max", "0"});
    CHECK(orth.code == 0);
    CHECK(lines(orth.out).size() == 1 + 21);
}

TEST_CASE("emission: CSV quoting, empty tables, files and determinism") {
    cli::Report r;
    r.columns = {"a", "b"};
    CHECK(cli::to_csv(r) == "a,b\n");
    r.rows.push_back({std::string("x,\"y\""), 0.1});
    CHECK(cli::to_csv(r) == "a,b\n\"x,\"\"y\"\"\",0.10000000000000001\n");

    const std::string path = "gkcs_cli_test_output.json";
    const std::vector<std::string> args{"stats", "--class", "product", "--J", "1", "2", "--format", "json",
                                        "--output", path};
    REQUIRE(run(args).code == 0);
    std::ifstream f1(path);
    const std::string first((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    REQUIRE(run(args).code == 0);
    std::ifstream f2(path);
    const std::string second((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(first == second);
    CHECK(nlohmann::json::parse(first)["results"].size() == 2);
    std::remove(path.c_str());

    const Outcome bad = run({"spectrum", "--output", "/nonexistent-dir/out.csv"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("/nonexistent-dir/out.csv") != std::string::npos);
}
