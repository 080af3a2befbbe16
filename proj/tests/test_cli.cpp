#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// End-to-end checks of the installed command surface; the binary path and
// the sample deck directory come from the environment (set by ctest).

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const char* cli = std::getenv("SSMASS_CLI");
    REQUIRE(cli != nullptr);
    const std::string cmd = std::string(cli) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 512> buf;
    while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string deck(const std::string& name) {
    const char* dir = std::getenv("SSMASS_DECKS");
    REQUIRE(dir != nullptr);
    return std::string(dir) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/ssmass_cli_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("headline counts through the CLI") {
    auto r = run("components --input " + deck("modular_curve_p7.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "12\n");

    r = run("superspecial --input " + deck("modular_curve_p7.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "12\n");

    r = run("mass --input " + deck("modular_curve_p7.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1/4\n");

    r = run("components --input " + deck("fake_siegel_delta6.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "240\n");

    r = run("components --input " + deck("real_quadratic_inert.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "24\n");

    r = run("dimension --input " + deck("siegel_g2_p7.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\n");
}

TEST_CASE("exit codes follow the contract") {
    // validation failure: gcd(p, N) != 1
    const auto bad = write_temp("badval.json", R"({"field":{"degree":1,"places":{}},
        "quaternion":{"ramified":[]},"m":1,"N":3,"p":3})");
    auto r = run("components --input " + bad);
    CHECK(r.exit_code == 1);

    // hypothesis-gate refusal: p ramified in B
    const auto gated = write_temp("gate.json", R"({"field":{"degree":1,"places":{}},
        "quaternion":{"ramified":[{"prime":7,"gamma_parity":1},{"prime":2,"gamma_parity":1}]},
        "m":1,"N":3,"p":7})");
    r = run("components --input " + gated);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("unramified in B") != std::string::npos);

    // adlv mismatch would be exit 3; `both` on a good deck is exit 0
    r = run("adlv-count --input " + deck("real_quadratic_inert.json") + " --method both");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "2\n");
}

TEST_CASE("auditable JSON reports") {
    const auto r = run("components --input " + deck("modular_curve_p7.json") + " --output-json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"count\": \"12\"") != std::string::npos);
    CHECK(r.out.find("\"rule\"") != std::string::npos);
    CHECK(r.out.find("|G(Z/NZ)|") != std::string::npos);
}

TEST_CASE("lattice and curve subcommands") {
    auto r = run("lattice symplectic-nf --matrix " + deck("gram4.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "d = (-1 1)\n");

    r = run("lattice jordan --ranks 1:2 --dual");
    CHECK(r.out == "-1:2\n");

    r = run("lattice jordan --exists-rank 2 --exists-index 1");
    CHECK(r.out.find("true") == 0);

    r = run("curve mass --delta 2:0,13:1 -p 2");
    CHECK(r.out == "1\n");

    r = run("curve components --delta 2:1,3:1 -p 3 -N 5");
    CHECK(r.out == "40\n");

    r = run("curve check-dieudonne -p 5 -K 3");
    CHECK(r.out == "ok\n");

    r = run("curve check-dieudonne -p 5 -K 3 --perturbed");
    CHECK(r.exit_code == 3);

    r = run("group-order --kind gsp-modN -g 1 -N 4");
    CHECK(r.out == "96\n");

    r = run("siegel -g 2 -N 3 -p 7");
    CHECK(r.out.find("components") != std::string::npos);
}

TEST_CASE("output is identical across worker counts") {
    // large enough enumeration (2^12 assignments) to engage the worker pool
    const auto wide = write_temp("wide.json", R"({"field":{"degree":4,
        "places":{"7":[{"e":1,"f":2},{"e":1,"f":2}]}},
        "quaternion":{"ramified":[]},"m":3,"N":3,"p":7})");
    const std::string cmd = "adlv-count --input " + wide + " --method both";
    setenv("SSMASS_THREADS", "1", 1);
    const auto one = run(cmd);
    setenv("SSMASS_THREADS", "4", 1);
    const auto four = run(cmd);
    unsetenv("SSMASS_THREADS");
    CHECK(one.exit_code == 0);
    CHECK(one.out == "64\n");
    CHECK(one.out == four.out);

    // and across repeated runs
    const auto again = run(cmd);
    CHECK(again.out == one.out);
}

TEST_CASE("verify battery through the CLI") {
    const auto r = run("verify --level fast");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
}
