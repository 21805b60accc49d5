#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int rc;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(DMW_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST_CASE("emit-module") {
    const auto r = run("emit-module --q 2");
    REQUIRE(r.rc == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["module"]["family"] == "standard");
    CHECK(j["module"]["rank"] == 1);

    const auto s = run("emit-module --q 2 --J symbolic");
    REQUIRE(s.rc == 0);
    const auto js = nlohmann::json::parse(s.out);
    // leading coefficient of phi_x is J^(q^2 + q)
    const auto lead = js["module"]["phi_x"]["coeffs"].back()["terms"];
    REQUIRE(lead.size() == 1);
    CHECK(lead[0]["exp"] == 6);
    CHECK(js["wedge"]["rank"] == 1);

    // zeta and zeta^q are the packed 2 and 3 of F_4: pi(theta) = 0
    CHECK(run("emit-module --q 2 --theta @2").rc == 2);
    CHECK(run("emit-module --q 2 --theta @1").rc == 0);
    CHECK(run("emit-module --q 6").rc == 2);
    CHECK(run("emit-module --q 2 --ext 3 --theta 1").rc == 2);
}

TEST_CASE("verify") {
    auto r = run("verify --suite rank1 --q 3");
    CHECK(r.rc == 0);
    CHECK(nlohmann::json::parse(r.out)["ok"] == true);
    r = run("verify --suite analytic --q 2 --trunc 5");
    CHECK(r.rc == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["checks"]["analytic.series.functional_x"] == true);
    CHECK(j["checks"]["analytic.series.functional_y"] == true);

    r = run("verify --suite rank1 --q 3 --tamper");
    CHECK(r.rc == 1);
    const auto f = nlohmann::json::parse(r.out)["failures"];
    CHECK(std::find(f.begin(), f.end(), "rank1.standard.commute") != f.end());
    CHECK(run("verify --suite nonsense").rc == 2);
    CHECK(run("verify --format yaml").rc == 2);
}

TEST_CASE("period and example-q2") {
    const auto r = run("period --q 2 --d 3 --trunc 40");
    REQUIRE(r.rc == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["valuation"] == -1);
    CHECK(j["d"] == 3);

    const auto e = run("example-q2");
    REQUIRE(e.rc == 0);
    CHECK(nlohmann::json::parse(e.out)["checks"]["J_equals_lambda5"] == true);
}

TEST_CASE("pairing output is reproducible") {
    const std::string args = "pairing --q 2 --ext 2 --ideal y --seed 3";
    const auto a = run(args), b = run(args);
    REQUIRE(a.rc == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["kernel_size"] == 16);
    for (const char* k : {"multilinear", "alternating", "surjective", "galois", "compatible"})
        CHECK(j["properties"][k] == true);
    CHECK(j["pairing_table"].size() == 256);
    CHECK(run("pairing --ideal \"alpha=0;beta=0;alphad=1\"").rc == 2);
}
