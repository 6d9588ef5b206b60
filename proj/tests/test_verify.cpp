#include <doctest.h>

#include <sstream>

#include "yuleperc/verify.hpp"

using namespace yuleperc;

TEST_CASE("lecam scenario passes and carries both bounds") {
    const ScenarioReport report = verify_lecam();
    REQUIRE(report.checks.size() == 2);
    CHECK(report.scenario == "lecam");
    CHECK(report.checks[0].name == "l1-bound");
    CHECK(report.checks[1].name == "tv-bound");
    CHECK(report.all_passed());
}

TEST_CASE("main-term identity and Stirling scenarios pass") {
    CHECK(verify_main_term_identity().all_passed());
    CHECK(verify_stirling().all_passed());
}

TEST_CASE("oracle equivalence at reduced replicates") {
    OracleEquivalenceOptions opt;
    opt.replicates = 4000;
    const ScenarioReport report = verify_oracle_equivalence(opt);
    REQUIRE(report.checks.size() == 4);
    CHECK(report.all_passed());
}

TEST_CASE("sandwich scenario reports the bookkeeping domain violation") {
    // floor(ln 1e6) = 13 < 28, so the stated k is outside the domain of
    // the time-window bounds; the scenario must say so, not paper over it.
    const ScenarioReport report = verify_sandwich();
    REQUIRE(report.checks.size() == 4);
    CHECK(report.checks[0].name == "bookkeeping-domain");
    CHECK_FALSE(report.checks[0].passed);
    CHECK_FALSE(report.all_passed());
    CHECK(report.checks[1].detail.find("clamped") != std::string::npos);
}

TEST_CASE("report formatting") {
    ScenarioReport report{"demo",
                          {CheckResult{"alpha", true, 0.5, 1.0, "<=", "half"},
                           CheckResult{"beta", false, 2.0, 1.0, "<=", ""}}};
    CHECK_FALSE(report.all_passed());

    std::ostringstream table;
    print_report(table, report);
    CHECK(table.str().find("[PASS] alpha") != std::string::npos);
    CHECK(table.str().find("[FAIL] beta") != std::string::npos);
    CHECK(table.str().find("(half)") != std::string::npos);

    const std::string line = one_line(report);
    CHECK(line.rfind("FAIL demo:", 0) == 0);
    CHECK(line.find("alpha 0.5<=1 ok;") != std::string::npos);
    CHECK(line.find("beta 2<=1 VIOLATED;") != std::string::npos);
}

TEST_CASE("empty report counts as passed") {
    CHECK(ScenarioReport{"empty", {}}.all_passed());
}
