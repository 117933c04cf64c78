#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ratrec/cli.hpp"
#include "ratrec/scenario_io.hpp"

using namespace ratrec;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("ratrec_cli_" + std::to_string(std::rand()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("example 4 with classification") {
    Result r = run_cli({"example", "--id", "4", "--classify"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "class: ConvergesToPeriod4"));
    CHECK(contains(r.out, "l3: 9/10"));
    CHECK(contains(r.out, "l2: -3/10"));
    CHECK(contains(r.out, "l1: 2/5"));
    CHECK(contains(r.out, "l0: -6/5"));
    CHECK(contains(r.out, "period: 4"));
}

TEST_CASE("every worked example runs") {
    for (int id = 1; id <= 4; ++id) CHECK(run_cli({"example", "--id", std::to_string(id), "--classify"}).code == 0);
    Result bad = run_cli({"example", "--id", "5"});
    CHECK(bad.code == 2);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("verify sweep") {
    Result r = run_cli({"verify", "--trials", "100", "--seed", "7", "--horizon", "50"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "100/100 exact matches"));
    Result again = run_cli({"verify", "--trials", "100", "--seed", "7", "--horizon", "50"});
    CHECK(again.out == r.out);
    Result threaded = run_cli({"verify", "--trials", "100", "--seed", "7", "--horizon", "50", "--jobs", "4"});
    CHECK(threaded.out == r.out);
    Result lt = run_cli({"verify", "--trials", "12", "--seed", "1", "--horizon", "30", "--regime", "lt"});
    CHECK(lt.code == 0);
    CHECK(contains(lt.out, "ModLess: 12/12"));
    CHECK(run_cli({"verify", "--regime", "sideways"}).code == 2);
}

TEST_CASE("closed-form subcommand") {
    TempDir dir;
    std::string ex2 = dir.write("ex2.json", render_scenario(paper_example(2)));
    Result r = run_cli({"closed-form", "--scenario", ex2, "--n", "7"});
    CHECK(r.code == 0);
    CHECK(r.out == "-2/1 (corollary1)\n");
    Result t1 = run_cli({"closed-form", "--scenario", ex2, "--n", "7", "--form", "theorem1"});
    CHECK(t1.out == "-2/1 (theorem1)\n");
    // A != alpha, so the Gamma form does not apply
    CHECK(run_cli({"closed-form", "--scenario", ex2, "--n", "7", "--form", "corollary2"}).code == 1);
}

TEST_CASE("simulate writes CSV and SVG") {
    TempDir dir;
    std::string ex1 = dir.write("ex1.json", render_scenario(paper_example(1)));
    Result r = run_cli({"simulate", "--scenario", ex1, "--horizon", "20", "--csv", dir.file("t.csv"), "--svg",
                        dir.file("t.svg")});
    CHECK(r.code == 0);
    std::string csv = slurp(dir.file("t.csv"));
    CHECK(csv.rfind("n,exact,float\n", 0) == 0);
    CHECK(contains(csv, "# status=Complete"));
    CHECK(contains(slurp(dir.file("t.svg")), "<svg"));

    Result plain = run_cli({"simulate", "--scenario", ex1, "--horizon", "20"});
    CHECK(plain.out == csv);
    Result fl = run_cli({"simulate", "--scenario", ex1, "--horizon", "20", "--mode", "float"});
    CHECK(contains(fl.out, "\n-3,,-1\n"));
}

TEST_CASE("classify subcommand") {
    TempDir dir;
    std::string ex3 = dir.write("ex3.json", render_scenario(paper_example(3)));
    Result r = run_cli({"classify", "--scenario", ex3});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "class: Unbounded"));
    Result j = run_cli({"classify", "--scenario", ex3, "--json"});
    CHECK(j.code == 0);
    CHECK(contains(j.out, "\"class\": \"Unbounded\""));

    std::string bad = dir.write(
        "bad.json", R"({"alpha":"1","A":"1","B":"1","a":"1","b":"1","c":"1","d":"-1","horizon":10})");
    CHECK(run_cli({"classify", "--scenario", bad}).code == 1);
}

TEST_CASE("forbidden subcommand") {
    TempDir dir;
    std::string bad = dir.write(
        "bad.json", R"({"alpha":"1","A":"1","B":"1","a":"1","b":"1","c":"1","d":"-1","horizon":10})");
    Result r = run_cli({"forbidden", "--scenario", bad, "--horizon", "10"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
    std::string ok = dir.write("ok.json", render_scenario(paper_example(1)));
    CHECK(run_cli({"forbidden", "--scenario", ok, "--horizon", "300"}).out == "none\n");
}

TEST_CASE("usage errors exit 2") {
    TempDir dir;
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"simulate"}).code == 2);
    CHECK(run_cli({"simulate", "--scenario", dir.file("missing.json")}).code == 2);
    std::string malformed = dir.write("m.json", R"({"alpha":"1"})");
    CHECK(run_cli({"classify", "--scenario", malformed}).code == 2);
    std::string ok = dir.write("ok.json", render_scenario(paper_example(1)));
    CHECK(run_cli({"simulate", "--scenario", ok, "--horizon", "0"}).code == 2);
    CHECK(run_cli({"closed-form", "--scenario", ok, "--n", "-9"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("sweep helper reports counterexample-free runs") {
    cli::VerifyOutcome v = cli::verify_sweep(42, 8, 25, "eq-");
    CHECK(v.trials == 8);
    CHECK(v.matches == 8);
    CHECK(contains(v.report, "8/8 exact matches"));
}
