#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

std::string bin() {
    const char* b = std::getenv("LERCHSCAN_BIN");
    REQUIRE_MESSAGE(b != nullptr, "LERCHSCAN_BIN must point at the lerchscan binary");
    return b;
}

struct Run {
    int exit_code;
    std::string out;
};

Run run(const std::string& args) {
    std::string out_path = "/tmp/lerchscan_cli_out";
    std::string cmd = bin() + " " + args + " >" + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    Run r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream is(out_path);
    std::stringstream ss;
    ss << is.rdbuf();
    r.out = ss.str();
    std::remove(out_path.c_str());
    return r;
}

}  // namespace

TEST_CASE("eval prints the p = 7 desk values") {
    auto r = run("eval --p 7 --N 3 --bases 2,3 --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("q_7(2) = 2") != std::string::npos);
    CHECK(r.out.find("q_7(3) = 6") != std::string::npos);
    CHECK(r.out.find("s(k,3) = [5,0,2]") != std::string::npos);
}

TEST_CASE("eval --N 1 gives the trivial table") {
    auto r = run("eval --p 7 --N 1 --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("s(k,1) = [0]") != std::string::npos);
}

TEST_CASE("eval json output carries the same data") {
    auto r = run("eval --p 1093 --bases 2 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"2\": 0") != std::string::npos);
}

TEST_CASE("eval rejects a composite p with a usage error") {
    auto r = run("eval --p 91 --N 3");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("verify exits 0 on a clean range") {
    auto r = run("verify --range 5..400 --checks table1,mirror,lerch_main --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("OK") != std::string::npos);
    CHECK(r.out.find("fail=0") != std::string::npos);
}

TEST_CASE("scan finds the small Wieferich window") {
    auto r = run("scan --range 1000..4000 --target q2 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1093,q2,0") != std::string::npos);
    CHECK(r.out.find("3511,q2,0") != std::string::npos);
}

TEST_CASE("scan writes to --output and respects csv format") {
    std::string path = "/tmp/lerchscan_cli_hits.csv";
    std::remove(path.c_str());
    auto r = run("scan --range 5..1000 --target s:6:2 --output " + path);
    CHECK(r.exit_code == 0);
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    std::string data = ss.str();
    CHECK(data.find("p,target,value,q2,q3") != std::string::npos);
    CHECK(data.find("73,s:6:2,0") != std::string::npos);
    CHECK(data.find("83,s:6:2,0") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("scan --range 5..100").exit_code == 2);           // missing --target
    CHECK(run("scan --range nonsense --target q2").exit_code == 2);
    CHECK(run("verify --range 100..5").exit_code == 2);         // lo > hi
    CHECK(run("frobnicate").exit_code == 2);                    // unknown subcommand
    CHECK(run("scan --range 5..100 --target bogus").exit_code == 2);
    CHECK(run("scan --range 5..100 --target q2 --resume").exit_code == 2);
}

TEST_CASE("report emits a zero census") {
    auto r = run("report --range 5..100 --N 6 --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("s:6:0 = 0 at p=61") != std::string::npos);
    CHECK(r.out.find("s:6:2 = 0 at p=73") != std::string::npos);
}

TEST_CASE("help exits 0") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("scan --help").exit_code == 0);
}
