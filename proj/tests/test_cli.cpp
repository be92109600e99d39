#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out = "/tmp/ranpart_cli_stdout.txt";
    const std::string err = "/tmp/ranpart_cli_stderr.txt";
    const std::string cmd =
        std::string(RANPART_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("gw subcommand prints the exact anchor value") {
    const auto r = run_cli("gw --degree 1 --insertions 0");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("23/24\n", 0) == 0); // first line is the bare rational
    CHECK(contains(r.out, "decimal 0.95833333333333"));

    const auto r0 = run_cli("gw --degree 0 --insertions 0");
    CHECK(r0.code == 0);
    CHECK(r0.out.rfind("-1/24\n", 0) == 0);

    const auto rt = run_cli("gw --degree 6 --target-genus 1");
    CHECK(rt.code == 0);
    CHECK(rt.out.rfind("11\n", 0) == 0); // p(6) covers of the torus
}

TEST_CASE("measure-table emits the exact Plancherel weights") {
    const auto r = run_cli("measure-table --measure plancherel --n 3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "3,3,1/6"));
    CHECK(contains(r.out, "\"2,1\",3,2/3"));
    CHECK(contains(r.out, "\"1,1,1\",3,1/6"));
    CHECK(contains(r.out, "# seed=0"));
    CHECK(contains(r.out, "# z_exact=1"));
}

TEST_CASE("sample runs are byte-identical given the seed") {
    const std::string a = "/tmp/ranpart_cli_sample_a.csv";
    const std::string b = "/tmp/ranpart_cli_sample_b.csv";
    const auto ra = run_cli(
        "sample --measure plancherel --n 1000 --seed 7 --out " + a);
    const auto rb = run_cli(
        "sample --measure plancherel --n 1000 --seed 7 --out " + b);
    CHECK(ra.code == 0);
    CHECK(rb.code == 0);
    const std::string ca = slurp(a);
    CHECK(ca == slurp(b));
    CHECK(contains(ca, "# seed=7"));
    CHECK(!ca.empty());

    // a different seed changes the draw
    const auto rc_ = run_cli(
        "sample --measure plancherel --n 1000 --seed 8 --out " + a);
    CHECK(rc_.code == 0);
    CHECK(slurp(a) != ca);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("json output is well-formed and carries the metadata") {
    const auto r = run_cli(
        "elliptic-trace --q-order 4 --seed 11 --format json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["meta"]["tool"] == "ranpart 1.0.0");
    CHECK(j["meta"]["subcommand"] == "elliptic-trace");
    CHECK(j["meta"]["seed"] == "11");
    REQUIRE(j["rows"].size() == 5);
    // Euler-product coefficients 1,1,2,3,5
    CHECK(j["rows"][4]["coeff_re"].get<std::string>().rfind("5", 0) == 0);
}

TEST_CASE("hurwitz subcommand, including the brute column") {
    const auto r = run_cli("hurwitz --degree 2 --base-genus 1");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("2\n", 0) == 0);

    const std::string out = "/tmp/ranpart_cli_hurwitz.csv";
    const auto rb = run_cli(
        "hurwitz --degree 2 --branch \"2;2\" --brute --out " + out);
    CHECK(rb.code == 0);
    CHECK(rb.out.rfind("1/2\n", 0) == 0);
    const std::string table = slurp(out);
    CHECK(contains(table, "value,decimal,brute"));
    CHECK(contains(table, "1/2,0.5,1/2"));
    std::remove(out.c_str());
}

TEST_CASE("correlate agrees with its brute column through the CLI") {
    const auto r = run_cli(
        "correlate --kernel bessel --xi 1 --points 1/2 --brute-emax 30");
    CHECK(r.code == 0);
    // kernel diagonal at 1/2 under xi=1; brute within its printed tail bound
    std::istringstream rows(r.out.substr(r.out.find("points,")));
    std::string header, data;
    std::getline(rows, header);
    std::getline(rows, data);
    const auto c1 = data.find(',');
    const auto c2 = data.find(',', c1 + 1);
    const auto c3 = data.find(',', c2 + 1);
    const double det = std::stod(data.substr(c1 + 1, c2 - c1 - 1));
    const double brute = std::stod(data.substr(c2 + 1, c3 - c2 - 1));
    const double tail = std::stod(data.substr(c3 + 1));
    CHECK(std::abs(det - brute) <= tail + 1e-8);
}

TEST_CASE("exit codes: 2 for argument problems, 3 for numeric failures") {
    CHECK(run_cli("bogus-subcommand").code == 2);
    CHECK(run_cli("gw --degree 1 --no-such-flag").code == 2);
    CHECK(run_cli("gw --degree 99").code == 2);
    CHECK(run_cli("correlate --kernel sine --points 1/2 --exact").code == 2);
    CHECK(run_cli("measure-table --measure schur --t 1 --exact").code == 2);
    CHECK(run_cli("gap --xi 1").code == 2); // neither --height nor --points
    // a 5-step cap cannot reach the 1e-8 residual target
    CHECK(run_cli("maximize --u 0 --kappa 0 --cells 64 --cap 5").code == 3);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("limit-shape and gap expose the frozen closed forms") {
    const auto r = run_cli("limit-shape --t 1 --arcs --level 0");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "# density=0.5"));
    CHECK(contains(r.out, "0,1.57079632679489")); // [0, pi/2] up to bisection

    const auto g = run_cli("gap --xi 1 --height 0");
    CHECK(g.code == 0);
    // Prob{lambda_1 = 0} = e^{-1} under poissonized Plancherel at xi = 1
    CHECK(contains(g.out, "0,0.36787944117144"));
}
