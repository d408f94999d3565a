#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path work = fs::path(CLI_WORK_DIR);

int run(const std::string& args, const std::string& out)
{
    fs::create_directories(work);
    const std::string cmd = std::string(CLI_PATH) + " " + args + " --out " + (work / out).string() + " > "
                            + (work / (out + ".stdout")).string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string data(const std::string& name)
{
    return (fs::path(DATA_DIR) / name).string();
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json results(const std::string& out)
{
    return json::parse(slurp(work / out / "results.json"));
}

} // namespace

TEST_CASE("vol of the (2,2) family")
{
    REQUIRE(run("--command vol --divisor " + data("canonical_2_2.json"), "vol") == 0);
    const auto r = results("vol");
    CHECK(r["result"]["vol"].get<double>() == doctest::Approx(std::log(2.0) + 0.5).epsilon(1e-6));
    CHECK(r["method"] == "closed-form+quadrature");
    CHECK(r.contains("tolerances"));
    CHECK(r.contains("grid_resolution"));
    CHECK(fs::exists(work / "vol" / "G.tsv"));
}

TEST_CASE("vol-base with zero bounds equals vol")
{
    REQUIRE(run("--command vol-base --divisor " + data("canonical_2_2.json") + " --mu hyperplane:1:0 --mu fiber:2:0",
                "vol0")
            == 0);
    const auto r = results("vol0");
    CHECK(r["result"]["vol_base"] == r["result"]["vol"]);
    REQUIRE(run("--command vol-base --divisor " + data("canonical_2_2.json") + " --mu hyperplane:1:0.5", "volh") == 0);
    CHECK(results("volh")["result"]["vol_base"].get<double>()
          == doctest::Approx(0.5 * std::log(2.0) + 0.25).epsilon(1e-9));
}

TEST_CASE("zariski report")
{
    REQUIRE(run("--command zariski --divisor " + data("canonical_quarter_2.json"), "zar") == 0);
    const auto rep = json::parse(slurp(work / "zar" / "decomposition.json"));
    CHECK(rep["pass"] == true);
    CHECK(rep["nef_certificate"]["certified"] == true);
    CHECK(rep["positive"]["coeffs"].size() == 2);
    CHECK(rep["mu_checks"].size() == 4);
    CHECK(std::abs(rep["vol_positive"].get<double>() - rep["vol_input"].get<double>()) <= 1e-3);
}

TEST_CASE("deterministic output")
{
    const std::string args = "--command prop-suite --count 4 --seed 99 --divisor " + data("canonical_quarter_2.json");
    REQUIRE(run(args, "det1") == 0);
    REQUIRE(run(args, "det2") == 0);
    CHECK(slurp(work / "det1" / "results.json") == slurp(work / "det2" / "results.json"));
    REQUIRE(run("--command mu-profile --mu hyperplane:1:0 --divisor " + data("canonical_quarter_2.json"), "prof1") == 0);
    REQUIRE(run("--command mu-profile --mu hyperplane:1:0 --divisor " + data("canonical_quarter_2.json"), "prof2") == 0);
    CHECK(slurp(work / "prof1" / "profile.tsv") == slurp(work / "prof2" / "profile.tsv"));
    CHECK(results("prof1")["result"]["nonincreasing"] == true);
}

TEST_CASE("other commands")
{
    REQUIRE(run("--command body --divisor " + data("canonical_1_2_4.json"), "body") == 0);
    CHECK(results("body")["result"]["volume"].get<double>() == 0.5);
    REQUIRE(run("--command e-range --n 1 --divisor " + data("canonical_2_2.json"), "erange") == 0);
    CHECK(results("erange")["result"]["e_min"].get<double>() == doctest::Approx(0.5 * std::log(2.0)));
    REQUIRE(run("--command oracle-check --n 100 --divisor " + data("canonical_2_2.json"), "oracle") == 0);
    CHECK(results("oracle")["method"] == "oracle");
    REQUIRE(run("--command mu --mu hyperplane:1:0 --divisor " + data("canonical_quarter_2.json"), "mu") == 0);
    CHECK(results("mu")["result"]["mu"][0]["mu"].get<double>() == doctest::Approx(0.354106077435));
    // results records re-parse to the input divisor
    CHECK(results("mu")["divisor"]["potential"]["a"][0].get<double>() == 0.25);
}

TEST_CASE("exit codes")
{
    CHECK(run("--command vol --divisor " + data("missing.json"), "e1") == 2);
    CHECK(run("--command vol --divisor " + data("bad_slopes.json"), "e2") == 2);
    CHECK(run("--command nope --divisor " + data("canonical_2_2.json"), "e3") == 2);
    CHECK(run("--command mu --mu hyperplane:5:0 --divisor " + data("canonical_2_2.json"), "e4") == 2);
    CHECK(run("--command mu --mu hyperplane:1:0 --divisor " + data("not_big.json"), "e5") == 3);
    CHECK(run("--command zariski --divisor " + data("not_big.json"), "e6") == 3);
    CHECK(run("--command oracle-check --n 20 --tol 1e-6 --divisor " + data("canonical_2_2.json"), "e7") == 4);
    CHECK(slurp(work / "e5.stdout").find("bigness") != std::string::npos);
}
