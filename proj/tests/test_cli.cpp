#include "cfp/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kDir = CFP_INSTANCE_DIR;

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "cfp");
    std::ostringstream out, err;
    const int code = cfp::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "cfp-cli-test";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(Cli, SolveAffine)
{
    const CliRun r = cli({"solve", (kDir / "l1.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["status"], "converged");
    EXPECT_NEAR(j["fixed_point"][0].get<double>(), 0.428571, 1e-6);
    EXPECT_NEAR(j["fixed_point"][1].get<double>(), 0.428571, 1e-6);
}

TEST(Cli, OracleOnFloorMap)
{
    const CliRun r = cli({"oracle", (kDir / "f1.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["fixed_points"], json::parse("[[0,0],[0,1],[1,0]]"));
}

TEST(Cli, CheckReportsViolationWithExitOne)
{
    const CliRun r = cli({"check", (kDir / "f1.json").string()});
    EXPECT_EQ(r.code, 1);
    bool found = false;
    const json j = json::parse(r.out);
    for (const auto& rep : j["reports"])
        if (rep["hypothesis"] == "uniformly_locally_contractive") {
            EXPECT_EQ(rep["verdict"], "violated");
            found = true;
        }
    EXPECT_TRUE(found);
    EXPECT_EQ(cli({"check", (kDir / "l1.json").string()}).code, 0);
}

TEST(Cli, BrokenInstanceExitsTwo)
{
    const CliRun r = cli({"check", (kDir / "invalid" / "broken.json").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("symmetry"), std::string::npos);
    EXPECT_EQ(cli({"check", (kDir / "missing.json").string()}).code, 2);
}

TEST(Cli, UsageErrorsExitTwo)
{
    CliRun r = cli({"frobnicate"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    EXPECT_EQ(cli({"solve", "--bogus"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"check"}).code, 2);
    EXPECT_EQ(cli({"gen", "--seed", "1"}).code, 2);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, Chain)
{
    CliRun r = cli({"chain", (kDir / "l1.json").string(), "--from", "0", "--to", "1", "--eps", "0.3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["chain"]["n"], 4);

    r = cli({"chain", (kDir / "f1.json").string(), "--from", "0", "--to", "3", "--eps", "1.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["chain"]["n"], 3);

    r = cli({"chain", (kDir / "f1.json").string(), "--from", "0", "--to", "3", "--eps", "0.5"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json::parse(r.out)["found"], false);

    EXPECT_EQ(cli({"chain", (kDir / "f1.json").string(), "--from", "3", "--to", "0"}).code, 2);
    EXPECT_EQ(cli({"chain", (kDir / "f1.json").string(), "--from", "9", "--to", "0"}).code, 2);
}

TEST(Cli, VerifyLemma)
{
    CliRun r = cli({"verify-lemma", (kDir / "l1.json").string(), "--horizon", "30"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["rows"].size(), 31u);
    EXPECT_EQ(j["all_below"], true);
    EXPECT_EQ(cli({"verify-lemma", (kDir / "f1.json").string()}).code, 1);
}

TEST(Cli, GenIsDeterministicAndWritesFiles)
{
    const CliRun a = cli({"gen", "--seed", "5", "--size", "7"});
    const CliRun b = cli({"gen", "--seed", "5", "--size", "7"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const fs::path p = scratch("gen.json");
    ASSERT_EQ(cli({"gen", "--seed", "5", "--size", "7", "-o", p.string()}).code, 0);
    EXPECT_EQ(slurp(p), a.out);
    EXPECT_EQ(cli({"gen", "--seed", "5", "--size", "1"}).code, 2);
    EXPECT_EQ(cli({"gen", "--seed", "5", "--size", "4", "--style", "contractive"}).code, 0);
}

TEST(Cli, TraceFiles)
{
    const fs::path jl = scratch("t.jsonl"), cs = scratch("t.csv");
    ASSERT_EQ(cli({"solve", (kDir / "l1.json").string(), "--trace", jl.string()}).code, 0);
    ASSERT_EQ(cli({"solve", (kDir / "l1.json").string(), "--trace", cs.string(), "--format", "csv"}).code, 0);
    const std::string jtext = slurp(jl), ctext = slurp(cs);
    EXPECT_EQ(json::parse(jtext.substr(0, jtext.find('\n')))["m"], 0);
    EXPECT_EQ(ctext.substr(0, ctext.find('\n')), "m,x,y,residual,eta_step,bound");
    EXPECT_EQ(std::count(jtext.begin(), jtext.end(), '\n') + 1, std::count(ctext.begin(), ctext.end(), '\n'));

    ASSERT_EQ(cli({"solve", (kDir / "l1.json").string(), "--no-trace", "--trace", jl.string()}).code, 0);
    EXPECT_EQ(slurp(jl), "");
    EXPECT_EQ(cli({"solve", (kDir / "l1.json").string(), "--format", "xml"}).code, 2);
}

TEST(Cli, BatchModeIsOrderedJsonLines)
{
    const CliRun r = cli({"solve", "--all", kDir.string()});
    std::istringstream lines(r.out);
    std::string line;
    std::vector<std::string> files;
    while (std::getline(lines, line))
        files.push_back(json::parse(line)["file"]);
    EXPECT_TRUE(std::is_sorted(files.begin(), files.end()));
    EXPECT_EQ(files.size(), 4u);
    EXPECT_EQ(r.out, cli({"solve", "--all", kDir.string()}).out);
    EXPECT_EQ(cli({"check", "--all", (kDir / "nope").string()}).code, 2);
    EXPECT_EQ(cli({"check", "--all", kDir.string(), (kDir / "l1.json").string()}).code, 2);
}
