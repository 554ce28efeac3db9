#include <doctest.h>

#include "lvvmf/cli.hpp"
#include "lvvmf/qseries.hpp"
#include "lvvmf/rep_norms.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace lvvmf;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("lvvmf_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("number formatting round trips") {
    CHECK(cli::number(0.1) == "0.1");
    CHECK(cli::number(3) == "3");
    CHECK(std::stod(cli::number(1.0 / 3)) == 1.0 / 3);
    CHECK(cli::number(1e-300 / 1e10) == "1e-310");
}

TEST_CASE("decompose reports the word") {
    const Run r = run({"decompose", "1", "0", "1", "1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["tool"] == "lvvmf");
    CHECK(j["version"] == cli::kVersion);
    CHECK(j["config"]["command"] == "decompose");
    CHECK(j["pass"] == true);
    CHECK(j["results"]["sign"] == "-1");
    CHECK(j["results"]["exponents"] == nlohmann::json::array({"1", "1", "0"}));
}

TEST_CASE("exit codes") {
    CHECK(run({"decompose", "2", "0", "0", "1"}).code == 2);
    CHECK(run({"verify", "words", "--cmax", "-3"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "bmatrix", "--mmax", "6", "--vanish-max", "4"}).code == 0);

    const fs::path dir = temp_dir("rep");
    Representation broken = sym_power_rep(1);
    broken.rhoS(0, 0) = 1;
    broken.exactS.reset();
    broken.exactT.reset();
    {
        std::ofstream f(dir / "broken.json");
        write_representation(f, broken);
    }
    CHECK(run({"verify", "norms", "--rep", (dir / "broken.json").string(), "--cmax", "10", "--chain-cmax", "5"}).code == 1);
    CHECK(run({"verify", "norms", "--rep", (dir / "missing.json").string()}).code == 2);
    fs::remove_all(dir);
}

TEST_CASE("seeded reports are byte identical") {
    const std::vector<std::string> args{"--seed", "7", "slashcheck", "--example", "sym1-delta", "--order", "40",
                                        "--cmax", "2", "--samples", "2"};
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out)["config"]["seed"] == "7");
    const Run l1 = run({"--seed", "3", "verify", "lnu", "--samples", "20"});
    const Run l2 = run({"--seed", "3", "verify", "lnu", "--samples", "20"});
    CHECK(l1.out == l2.out);
}

TEST_CASE("csv output for the word sweep") {
    const Run r = run({"--format", "csv", "verify", "words", "--cmax", "6"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("c,d,nu,length,max_ratio\n", 0) == 0);
    CHECK(r.out.find("# checked") != std::string::npos);
}

TEST_CASE("bmatrix and jordan power") {
    const Run b = run({"bmatrix", "--m", "2"});
    REQUIRE(b.code == 0);
    const auto j = nlohmann::json::parse(b.out);
    CHECK(j["results"]["matrix"][1][0] == "-x");
    const Run p = run({"jordan", "power", "--m", "3", "--mu", "0", "--l", "-2"});
    CHECK(p.code == 0);
}

TEST_CASE("rep sym writes a readable file") {
    const fs::path dir = temp_dir("sym");
    const Run r = run({"--out", (dir / "sym3.json").string(), "rep", "sym", "--m", "3"});
    REQUIRE(r.code == 0);
    std::ifstream in(dir / "sym3.json");
    const Representation rep = read_representation(in);
    CHECK(rep.p == 4);
    CHECK(validate(rep).pass);
    fs::remove_all(dir);
}

TEST_CASE("qexp gen and convert") {
    const fs::path dir = temp_dir("qexp");
    REQUIRE(run({"--out", (dir / "delta.series").string(), "qexp", "gen", "--delta", "--order", "30"}).code == 0);
    {
        std::ifstream in(dir / "delta.series");
        CHECK(read_series(in) == delta_series(30));
    }
    {
        std::ofstream e(dir / "expansion.json");
        e << R"({"basis":"binomial","components":[[{"t":"0","series":"delta.series"}],)"
          << R"([{"t":"0","series":"delta.series"},{"t":"1","series":"delta.series"}]]})";
    }
    REQUIRE(run({"qexp", "convert", "--in", (dir / "expansion.json").string(), "--to", "log", "--out-dir",
                 (dir / "log").string()})
                .code == 0);
    CHECK(fs::exists(dir / "log" / "expansion.json"));
    REQUIRE(run({"qexp", "convert", "--in", (dir / "log" / "expansion.json").string(), "--to", "binomial",
                 "--out-dir", (dir / "back").string()})
                .code == 0);
    std::ifstream back(dir / "back" / "expansion.json");
    const auto j = nlohmann::json::parse(back);
    CHECK(j["basis"] == "binomial");
    CHECK(j["components"][1].size() == 2);
    fs::remove_all(dir);
}
