#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixlab/field_io.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

using namespace mixlab;

namespace {

namespace fs = std::filesystem;

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "mixlab_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args, std::string* err = nullptr) {
    const auto errfile = (scratch() / "stderr.txt").string();
    const std::string cmd = std::string(MIXLAB_BIN) + " " + args + " > " + (scratch() / "stdout.txt").string() +
                            " 2> " + errfile;
    const int status = std::system(cmd.c_str());
    if (err) *err = read_text(errfile);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string out() { return read_text((scratch() / "stdout.txt").string()); }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run("seminorm --help") == 0);
    CHECK(out().find("--eps") != std::string::npos);
    std::string err;
    CHECK(run("seminorm --bogus 3", &err) == 2);
    CHECK(lines(err).size() == 1);
    CHECK(run("", &err) == 2);
    CHECK(run("frobnicate", &err) == 2);
    CHECK(run("run-scheme --N 5", &err) == 2);
    CHECK(run("ledger --N 128", &err) == 2);
}

TEST_CASE("computation errors") {
    std::string err;
    CHECK(run("seminorm --set /nonexistent/file.set", &err) == 1);
    CHECK(!err.empty());
}

TEST_CASE("run-scheme ledger") {
    const auto ledger = (scratch() / "l.csv").string();
    const auto set = (scratch() / "final.set").string();
    REQUIRE(run("run-scheme --levels 3 --N 64 --ledger " + ledger + " --out " + set) == 0);
    auto l = lines(read_text(ledger));
    REQUIRE(l.size() == 5);
    CHECK(l[0].rfind("# mixlab run-scheme", 0) == 0);
    CHECK(l[0].find("levels=3") != std::string::npos);
    CHECK(l[1].rfind("level,moves,cost_units,cost", 0) == 0);
    CHECK(l[2].rfind("1,3,1536,0.375,0.375", 0) == 0);
    CHECK(l[4].rfind("3,48,1536,0.375,1.125", 0) == 0);
    CHECK(read_field(set).count() == 32 * 32);
}

TEST_CASE("seminorm and mixscale") {
    const auto set = (scratch() / "half.set").string();
    write_field(set, make_half_torus(GridSpec(64)));
    REQUIRE(run("seminorm --set " + set + " --eps 0.0625") == 0);
    const double a = std::stod(out());
    REQUIRE(run("seminorm --pattern half --N 64 --eps 0.0625") == 0);
    CHECK(std::stod(out()) == a);
    REQUIRE(run("mixscale --pattern checkerboard --N 256 --m 5 --eps 0.0078125") == 0);
    auto l = lines(out());
    CHECK(l.back().rfind("scale,", 0) == 0);
    CHECK(l.back() != "scale,none");
}

TEST_CASE("reruns are identical") {
    const auto a = (scratch() / "a.csv").string(), b = (scratch() / "b.csv").string();
    REQUIRE(run("counterexample --M 16 --L 3 --trials 3 --seed 4 --csv " + a) == 0);
    REQUIRE(run("counterexample --M 16 --L 3 --trials 3 --seed 4 --csv " + b) == 0);
    auto l = lines(read_text(a));
    auto m = lines(read_text(b));
    REQUIRE(l.size() == m.size());
    for (std::size_t k = 1; k < l.size(); ++k) CHECK(l[k] == m[k]);
    REQUIRE(l.size() == 4);
    CHECK(l[1] == "L,eps,E1,E2,E3,I,paper_floor");
}

TEST_CASE("slider and verify-prop22") {
    REQUIRE(run("slider --n 1 --mode bfs") == 0);
    CHECK(out().find("distance 1") != std::string::npos);
    const auto csv = (scratch() / "g.csv").string();
    REQUIRE(run("slider --n 8 --mode greedy --out " + csv) == 0);
    CHECK(lines(read_text(csv)).size() == 2 + 49);
    REQUIRE(run("verify-prop22 --flow shear --a 1.0 --T 0.3 --eps 0.0625 --N 128 --steps 6 --csv -") == 0);
    CHECK(out().find("N,steps,lhs,rhs,gap") != std::string::npos);
}

TEST_CASE("plots are deterministic") {
    const auto a = (scratch() / "a.svg").string(), b = (scratch() / "b.svg").string();
    REQUIRE(run("plot --kind scheme --levels 5 --N 256 --out " + a) == 0);
    REQUIRE(run("plot --kind scheme --levels 5 --N 256 --out " + b) == 0);
    CHECK(read_text(a) == read_text(b));
    CHECK(read_text(a).find("<polyline") != std::string::npos);
    REQUIRE(run("plot --kind bounds --M 16 --L 4 --out " + a) == 0);
    CHECK(read_text(a).find("</svg>") != std::string::npos);
}
