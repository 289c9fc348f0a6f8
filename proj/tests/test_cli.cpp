#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "hopfmorita/problem.hpp"

using namespace hopfmorita;

namespace {

std::string fixture(const std::string& name) { return std::string(HM_FIXTURES_DIR) + "/" + name; }

Json load_json(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return cli::parse_json(ss.str(), path);
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string validation_path(const Json& j) {
    try {
        cli::load_problem(j);
    } catch (const ValidationError& e) {
        return e.path();
    }
    return "<no error>";
}

Json circle_base() { return load_json(fixture("circle-lifts.json")); }

const Json& task(const Json& report, const std::string& name) {
    for (const auto& t : report["tasks"])
        if (t["task"] == name) return t;
    throw std::runtime_error("task missing: " + name);
}

}  // namespace

TEST(ProblemParse, SyntaxErrorsCarryLineAndColumn) {
    try {
        cli::parse_json("{\n  \"name\": ,\n}", "broken.json");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("broken.json:2:11"), std::string::npos) << e.what();
    }
    try {
        cli::parse_json("[1, 2", "short.json");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("short.json:1:"), std::string::npos) << e.what();
    }
    EXPECT_THROW(cli::load_problem_file(fixture("does-not-exist.json")), ParseError);
}

TEST(ProblemValidation, MalformedBracketArityNamesTheEntry) {
    EXPECT_EQ(validation_path(load_json(fixture("malformed-bracket.json"))), "lie_algebra.brackets[0]");
}

TEST(ProblemValidation, FieldPaths) {
    Json j = circle_base();
    j.erase("format_version");
    EXPECT_EQ(validation_path(j), "format_version");

    j = circle_base();
    j["algebra"]["model"] = "Octonions";
    EXPECT_EQ(validation_path(j), "algebra.model");

    j = circle_base();
    j["action"]["derivations"][0]["generator_image"] = {{"v", "1"}};
    EXPECT_EQ(validation_path(j), "action.derivations[0].generator_image.v");

    j = circle_base();
    j["twists"][2]["cocycle"]["xi1"]["1"] = "1/0";
    EXPECT_EQ(validation_path(j), "twists[2].cocycle.xi1.1");

    j = circle_base();
    j["twists"][1]["hat"] = "v";
    EXPECT_EQ(validation_path(j), "twists[1].hat");

    j = circle_base();
    j["lifts"][1]["twist"] = "missing";
    EXPECT_EQ(validation_path(j), "lifts[1].twist");

    j = circle_base();
    j["lifts"][1]["bimodule"] = "missing";
    EXPECT_EQ(validation_path(j), "lifts[1].bimodule");

    j = circle_base();
    j["tasks"][0] = "integrate";
    EXPECT_EQ(validation_path(j), "tasks[0]");

    j = circle_base();
    j["tasks"][6]["pairs"] = Json::array({Json::array({"canonical", "nobody"})});
    EXPECT_EQ(validation_path(j), "tasks[6].pairs[0][1]");

    j = circle_base();
    j["twists"][1]["name"] = "unit";
    EXPECT_EQ(validation_path(j), "twists[1].name");

    j = circle_base();
    j["lie_algebra"]["brackets"] = Json::array({Json::array({"xi1", "xi1", Json::object()})});
    EXPECT_EQ(validation_path(j), "lie_algebra.brackets[0]");

    j = circle_base();
    j["action"]["derivations"].push_back("zero");
    EXPECT_EQ(validation_path(j), "action.derivations");

    j = circle_base();
    j["tasks"][7] = Json{{"task", "covariance"}, {"lifts", {"canonical", "ghost"}}};
    EXPECT_EQ(validation_path(j), "tasks[7].lifts[1]");

    j = load_json(fixture("picard3.json"));
    j["tasks"][0]["strong_star"] = "yes";
    EXPECT_EQ(validation_path(j), "tasks[0].strong_star");

    j = circle_base();
    j["truncation"] = 40;
    EXPECT_EQ(validation_path(j), "truncation");
}

TEST(ProblemValidation, RequiredInputsPerTask) {
    Json j = load_json(fixture("picard3.json"));
    j["tasks"] = {"ce-cohomology"};
    EXPECT_EQ(validation_path(j), "tasks[0]");

    j = circle_base();
    j["tasks"] = {"picard"};
    EXPECT_EQ(validation_path(j), "tasks[0]");

    j = circle_base();
    j["tasks"] = {"morita-check"};
    j.erase("bimodules");
    j.erase("lifts");
    EXPECT_EQ(validation_path(j), "tasks[0]");

    j = circle_base();
    j["tasks"] = Json::array();
    EXPECT_EQ(validation_path(j), "tasks");

    j = circle_base();
    j["tasks"] = {"forget-diagram"};
    EXPECT_EQ(validation_path(j), "tasks[0]");
}

TEST(ProblemRun, CircleLiftsPresentQmodZ) {
    const auto p = cli::load_problem_file(fixture("circle-lifts.json"));
    const auto r = cli::run(p, {});
    EXPECT_EQ(r.exit_code, cli::kPass) << cli::summary(r.report);
    EXPECT_EQ(r.report["report_version"], 1);
    EXPECT_EQ(r.report["truncation"], 4);
    EXPECT_EQ(r.report["window"], 3);
    const Json& cls = task(r.report, "classify-lifts");
    EXPECT_EQ(cls["result"]["U0"]["structure"], "Q/Z");
    const Json& eq = task(r.report, "lift-equivalence");
    ASSERT_EQ(eq["verdicts"].size(), 4u);
    EXPECT_EQ(eq["verdicts"][2]["verdict"], "not-isomorphic");
    for (const auto& t : r.report["tasks"]) {
        EXPECT_EQ(t["certified_to_order"], 4);
        EXPECT_EQ(t["window"], 3);
    }
}

TEST(ProblemRun, PicardThreeHasOrderSix) {
    const auto r = cli::run(cli::load_problem_file(fixture("picard3.json")), {});
    EXPECT_EQ(r.exit_code, cli::kPass);
    EXPECT_EQ(task(r.report, "picard")["result"]["order"], 6);
}

TEST(ProblemRun, CorruptedMembershipReportsWitnesses) {
    const auto r = cli::run(cli::load_problem_file(fixture("corrupted-membership.json")), {});
    EXPECT_EQ(r.exit_code, cli::kVerdictFailure);
    const Json& t = task(r.report, "u-membership");
    EXPECT_EQ(t["verdict"], "FAIL");
    ASSERT_EQ(t["reports"].size(), 2u);
    for (const auto& rep : t["reports"]) {
        EXPECT_EQ(rep["verdict"], "FAIL");
        bool witnessed = false;
        for (const auto& c : rep["checks"]) witnessed = witnessed || (c["verdict"] == "FAIL" && !c["witnesses"].empty());
        EXPECT_TRUE(witnessed) << rep.dump(1);
    }
    EXPECT_FALSE(t["members"][0]["member"].get<bool>());
}

TEST(ProblemRun, FlagsOverrideTruncationAndWindow) {
    cli::Flags f;
    f.truncation = 3;
    f.window = 2;
    const auto r = cli::run(cli::load_problem_file(fixture("circle-lifts.json"), f), f);
    EXPECT_EQ(r.report["truncation"], 3);
    EXPECT_EQ(r.report["window"], 2);
    EXPECT_EQ(task(r.report, "hopf-axioms")["certified_to_order"], 3);
}

TEST(ProblemRun, DeterministicAcrossRunsAndParallelism) {
    for (const char* name : {"circle-lifts.json", "trivial-points.json", "solvable-poly.json", "corrupted-membership.json"}) {
        const auto p = cli::load_problem_file(fixture(name));
        const std::string a = cli::without_timing(cli::run(p, {}).report).dump(2);
        const std::string b = cli::without_timing(cli::run(cli::load_problem_file(fixture(name)), {}).report).dump(2);
        cli::Flags par;
        par.parallel = true;
        const std::string c = cli::without_timing(cli::run(p, par).report).dump(2);
        EXPECT_EQ(a, b) << name;
        EXPECT_EQ(a, c) << name;
    }
}

TEST(ProblemRun, OracleModeAgreesOnAllFixtures) {
    cli::Flags f;
    f.oracle = true;
    for (const char* name : {"circle-lifts.json", "trivial-points.json", "solvable-poly.json", "picard3.json",
                             "morita-column.json", "corrupted-membership.json"}) {
        const auto r = cli::run(cli::load_problem_file(fixture(name)), f);
        EXPECT_EQ(r.report["mode"], "verify-oracle");
        EXPECT_EQ(r.report["disagreements"], 0) << name;
        EXPECT_EQ(r.exit_code, cli::kPass) << name;
    }
}

TEST(ProblemRun, RandomCircleTwistsFollowIntegrality) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
    for (int trial = 0; trial < 6; ++trial) {
        const Rational q(num(rng), den(rng));
        Json j = circle_base();
        j["twists"] = Json::array({Json{{"name", "t"}, {"cocycle", {{"xi1", {{"1", (Scalar(q) * Scalar::i()).str()}}}}}}});
        j["lifts"] = Json::array({Json{{"name", "a"}, {"bimodule", "self"}}, Json{{"name", "b"}, {"bimodule", "self"}, {"twist", "t"}}});
        j["tasks"] = Json::array({"lift-equivalence"});
        const auto r = cli::run(cli::load_problem(j), {});
        const Json& v = task(r.report, "lift-equivalence")["verdicts"][0];
        Rational canon = q;
        canon.canonicalize();
        EXPECT_EQ(v["verdict"], canon.get_den() == 1 ? "isomorphic" : "not-isomorphic") << q.get_str();
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("--input " + fixture("circle-lifts.json")), 0);
    EXPECT_EQ(run_cli("--input " + fixture("corrupted-membership.json")), 1);
    EXPECT_EQ(run_cli("--input " + fixture("malformed-bracket.json")), 2);
    EXPECT_EQ(run_cli("--input " + fixture("does-not-exist.json")), 2);
    EXPECT_EQ(run_cli("--input " + fixture("picard3.json") + " --window nope"), 2);
    EXPECT_EQ(run_cli("--input " + fixture("picard3.json") + " --oracle --parallel"), 0);
}

TEST(Cli, OutputFileMatchesInProcessReport) {
    const std::string out = ::testing::TempDir() + "/picard3.report.json";
    ASSERT_EQ(run_cli("--input " + fixture("picard3.json") + " --output " + out), 0);
    const Json written = load_json(out);
    const auto r = cli::run(cli::load_problem_file(fixture("picard3.json")), {});
    EXPECT_EQ(cli::without_timing(written).dump(), cli::without_timing(r.report).dump());
    EXPECT_TRUE(written.contains("timing"));
}
