#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "json.hpp"

#include "dimsob/error.hpp"
#include "dimsob/report.hpp"

using namespace dimsob;

TEST_CASE("decide") {
    VerificationReport r;
    r.lhs = 1.0;
    r.rhs = 0.99;
    r.quad_budget = 0.02;
    r.decide();
    CHECK(r.pass);
    CHECK(r.margin == doctest::Approx(-0.01));
    r.quad_budget = 0.0;
    r.decide();
    CHECK_FALSE(r.pass);
    r.rhs = INFINITY;
    r.decide();
    CHECK(r.pass);
    CHECK(r.vacuous);
}

TEST_CASE("round12") {
    CHECK(round12(0.1234567890123456) == 0.123456789012);
    CHECK(round12(0.0) == 0.0);
    CHECK(std::isinf(round12(INFINITY)));
}

TEST_CASE("empty envelope is valid JSON") {
    ReportEnvelope env;
    auto j = nlohmann::json::parse(to_json(env));
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["reports"].empty());
    CHECK(j["constants"].empty());
}

TEST_CASE("non-finite numbers and wall clock") {
    ReportEnvelope env;
    VerificationReport r;
    r.rhs = INFINITY;
    r.lhs = NAN;
    env.reports.push_back(r);
    env.wall_clock_s = 1.5;
    auto j = nlohmann::json::parse(to_json(env));
    CHECK(j["reports"][0]["rhs"] == "inf");
    CHECK(j["reports"][0]["lhs"] == "nan");
    CHECK(j.contains("wall_clock_s"));
    auto k = nlohmann::json::parse(to_json(env, false));
    CHECK_FALSE(k.contains("wall_clock_s"));
    env.wall_clock_s = 7.0;
    CHECK(to_json(env, false) == k.dump(2) + "\n");
}

TEST_CASE("CSV formats") {
    ReportEnvelope env;
    env.constants.push_back({"rn", 1, 0.886226925452758});
    CHECK(to_csv(env) == "kind,n,value\nrn,1,0.886226925453\n");
    ReportEnvelope s;
    SweepRow row;
    row.n = 2;
    row.ratio = 0.5;
    row.constant = 0.25;
    row.max_so_far = 0.5;
    s.sweep.push_back(row);
    CHECK(to_csv(s) == "n,ratio,constant,max_so_far\n2,0.5,0.25,0.5\n");
}

TEST_CASE("unwritable path") {
    ReportEnvelope env;
    CHECK_THROWS_AS(emit(env, ReportFormat::json, "/nonexistent/dir/out.json"), Error);
}
