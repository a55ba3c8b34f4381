#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pelks/verifier/fixtures.hpp"
#include "pelks/verifier/runner.hpp"

using namespace pelks;
using namespace pelks::verifier;

namespace {

json minimal_a() {
    return json::parse(R"({"type": "A", "n": 1, "r": 2, "signature": [1, 1]})");
}

std::string diagnostic(const json& j) {
    try {
        parse_config(j);
    } catch (const ConfigInvalid& e) {
        return e.what();
    }
    return "";
}

int cli(const std::string& args) {
    const std::string cmd = std::string(PELKS_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST(Config, UnknownKeysAreRejectedWithTheirPath) {
    auto j = minimal_a();
    j["colour"] = "red";
    EXPECT_EQ(diagnostic(j).rfind("colour: unknown key", 0), 0u);
    j = minimal_a();
    j["local_places"] = json::parse(R"([{"q": 3, "flavour": 1}])");
    EXPECT_NE(diagnostic(j).find("local_places[0].flavour"), std::string::npos);
    j = minimal_a();
    j["archimedean"] = json::parse(R"({"field_model": "gaussian", "extra": true})");
    EXPECT_NE(diagnostic(j).find("archimedean.extra"), std::string::npos);
    j = minimal_a();
    j["tolerances"] = json::parse(R"({"epsilon": 1})");
    EXPECT_NE(diagnostic(j).find("tolerances.epsilon"), std::string::npos);
}

TEST(Config, InvariantsAreEnforced) {
    auto j = minimal_a();
    j["signature"] = {2, 1};
    EXPECT_NE(diagnostic(j).find("signature"), std::string::npos);
    j = minimal_a();
    j["signature"] = {2, 0};
    j["archimedean"] = json::parse(R"({"field_model": "gaussian"})");
    EXPECT_NE(diagnostic(j).find("p = q"), std::string::npos);
    j = minimal_a();
    j["n"] = 3;
    EXPECT_NE(diagnostic(j).find("n |"), std::string::npos);
    j = minimal_a();
    j["local_places"] = json::parse(R"([{"q": 6}])");
    EXPECT_NE(diagnostic(j).find("local_places[0]"), std::string::npos);
    j = minimal_a();
    j["local_places"] = json::parse(R"([{"q": 4}])");
    EXPECT_NE(diagnostic(j).find("local_places[0].split"), std::string::npos);
    j = json::parse(R"({"type": "C", "n": 2, "r": 1, "local_places": [{"q": 3, "s": 1}]})");
    EXPECT_NE(diagnostic(j).find("local_places[0].s"), std::string::npos);
    j = minimal_a();
    j["archimedean"] = json::parse(R"({"mu_mode": "explicit"})");
    EXPECT_NE(diagnostic(j).find("archimedean.mu"), std::string::npos);
}

TEST(Config, RoundTripsThroughJson) {
    for (const auto& f : fixtures()) {
        auto c = f.config();
        EXPECT_EQ(to_json(parse_config(to_json(c))), to_json(c)) << f.name;
    }
}

TEST(Fixtures, SourceTreeCopiesMatchTheBundledText) {
    for (const auto& f : fixtures()) {
        std::ifstream in(std::filesystem::path(PELKS_FIXTURE_DIR) / (f.name + ".json"));
        ASSERT_TRUE(in.good()) << f.name;
        std::stringstream buf;
        buf << in.rdbuf();
        EXPECT_EQ(json::parse(buf.str()), json::parse(f.text)) << f.name;
    }
}

TEST(Runner, AllFixturesPass) {
    for (const auto& f : fixtures()) {
        auto res = run(f.config());
        EXPECT_EQ(res.failed, 0) << f.name << "\n" << render_table(res);
        EXPECT_GT(res.passed, 0);
    }
}

TEST(Runner, QuaternionFixtureExponentIsOne) {
    auto res = run(find_fixture("quaternion-C")->config(), {.only = "local.q3.image_exponent"});
    ASSERT_EQ(res.reports.size(), 1u);
    EXPECT_EQ(res.reports[0].status, Status::pass);
    EXPECT_EQ(res.reports[0].computed["exponent"], 1);
}

TEST(Runner, EmptyCheckListGivesEmptyPassingReport) {
    auto c = find_fixture("unitary-A")->config();
    c.checks = std::vector<std::string>{};
    auto res = run(c);
    EXPECT_TRUE(res.reports.empty());
    EXPECT_EQ(res.exit_code(), 0);
    auto body = report_body(res);
    EXPECT_TRUE(body["checks"].empty());
    EXPECT_EQ(body["summary"]["total"], 0);
}

TEST(Runner, ReportsAreSortedAndTagged) {
    auto res = run(find_fixture("basechange-A")->config());
    auto body = report_body(res);
    EXPECT_EQ(body["schema_version"], kSchemaVersion);
    std::vector<std::string> names;
    for (const auto& c : body["checks"]) {
        names.push_back(c["name"]);
        for (const auto& e : c["expected"]) {
            ASSERT_TRUE(e.contains("provenance"));
            const std::string p = e["provenance"];
            EXPECT_TRUE(p == "paper" || p == "trivial" || p == "derived") << c["name"];
        }
        EXPECT_FALSE(c["expected"].empty()) << c["name"];
    }
    EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
}

TEST(Runner, DeterministicBody) {
    auto c = find_fixture("unitary-A")->config();
    auto a = report_body(run(c, {.seed = 99})).dump();
    auto b = report_body(run(c, {.seed = 99})).dump();
    EXPECT_EQ(a, b);
    auto other = report_body(run(c, {.seed = 100})).dump();
    EXPECT_NE(a, other);
}

TEST(Runner, OnlyGlobAndConfigChecksFilter) {
    auto c = find_fixture("unitary-A")->config();
    auto res = run(c, {.only = "arch.*"});
    for (const auto& r : res.reports) EXPECT_EQ(r.name.rfind("arch.", 0), 0u);
    EXPECT_FALSE(res.reports.empty());
    c.checks = std::vector<std::string>{"ks.*", "metric.identity"};
    res = run(c);
    for (const auto& r : res.reports) EXPECT_TRUE(r.name.rfind("ks.", 0) == 0 || r.name == "metric.identity");
}

TEST(Runner, FailuresDoNotAbortTheRun) {
    auto c = find_fixture("unitary-A")->config();
    c.archimedean->mu_mode = "explicit";
    c.archimedean->mu = Mat::Constant(1, 1, 3.0);  // not integral on Z[i]^2
    auto res = run(c);
    EXPECT_GT(res.failed, 0);
    EXPECT_GT(res.passed, 0);
    EXPECT_EQ(res.exit_code(), 1);
}

TEST(Explain, KnownAndUnknownChecks) {
    EXPECT_TRUE(explain("local.q3.image_exponent").has_value());
    EXPECT_TRUE(explain("metric.identity").has_value());
    EXPECT_FALSE(explain("no.such.check").has_value());
    // every planned check has an explanation
    for (const auto& f : fixtures())
        for (const auto& s : plan(f.config())) EXPECT_TRUE(explain(s.name).has_value()) << s.name;
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("fixtures list"), 0);
    EXPECT_EQ(cli("explain metric.identity"), 0);
    EXPECT_EQ(cli("run --config quaternion-C"), 0);
    const auto dir = std::filesystem::temp_directory_path();
    const auto bad = dir / "pelks_bad_config.json";
    std::ofstream(bad) << R"({"type": "A", "n": 1, "r": 2, "signature": [1, 1], "bogus": 0})";
    EXPECT_EQ(cli("run --config " + bad.string()), 2);
    const auto failing = dir / "pelks_failing_config.json";
    std::ofstream(failing)
        << R"({"type": "A", "n": 1, "r": 2, "signature": [1, 1], "archimedean": {"field_model": "gaussian", "mu_mode": "explicit", "mu": [[3]]}})";
    EXPECT_EQ(cli("run --config " + failing.string()), 1);
    const auto empty = dir / "pelks_empty_config.json";
    std::ofstream(empty) << R"({"type": "C", "n": 1, "r": 1, "checks": []})";
    EXPECT_EQ(cli("run --config " + empty.string()), 0);
}

TEST(Cli, ReportFileMatchesAcrossRuns) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "pelks_report_a.json", b = dir / "pelks_report_b.json";
    ASSERT_EQ(cli("run --config siegel-C --seed 5 --report " + a.string()), 0);
    ASSERT_EQ(cli("run --config siegel-C --seed 5 --report " + b.string()), 0);
    auto load = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        json j = json::parse(in);
        j.erase("timing");
        return j.dump();
    };
    EXPECT_EQ(load(a), load(b));
}
