#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hopfcyclic/report_json.hpp"

using namespace hopfcyclic;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded.
CliResult cli(const std::string& args) {
    const std::string cmd = std::string(HOPFCYCLIC_CLI) + " " + args + " 2>/dev/null";
    CliResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("hopfcyclic_cli_" + name)).string();
}

}  // namespace

TEST(Cli, CheckPasses) {
    CliResult r = cli("check --instance z2_group");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("pass"), std::string::npos);
}

TEST(Cli, HomologyJsonIsDeterministicAndRoundTrips) {
    const std::string args = "homology --instance z2_group --theory hc --max-degree 4 --format json";
    CliResult a = cli(args), b = cli(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const nlohmann::json env = nlohmann::json::parse(a.out);
    EXPECT_EQ(env.dump(2) + "\n", a.out);
    EXPECT_TRUE(env.at("ok").get<bool>());
    HomologyTable t = homology_table_from_json(env.at("report"));
    EXPECT_EQ(t.betti, (std::vector<std::size_t>{2, 0, 2, 0, 2}));
    EXPECT_EQ(to_json(t), env.at("report"));
}

TEST(Cli, PeriodicNeedsWindow) {
    EXPECT_EQ(cli("homology --instance z2_group --theory hp").code, 2);
    EXPECT_EQ(cli("homology --instance z2_group --theory hn").code, 2);
    CliResult r = cli("homology --instance z2_group --theory hp --window 3 --format json");
    ASSERT_EQ(r.code, 0);
    HomologyTable t = homology_table_from_json(nlohmann::json::parse(r.out).at("report"));
    EXPECT_TRUE(t.stable);
    EXPECT_EQ(t.previous.size(), t.betti.size());
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("frobnicate --instance z2_group").code, 2);
    EXPECT_EQ(cli("check").code, 2);
    EXPECT_EQ(cli("check --instance no_such_fixture").code, 2);
    EXPECT_EQ(cli("homology --instance z2_group --theory hx").code, 2);
    EXPECT_EQ(cli("verify --instance z2_group --suite nonsense").code, 2);
    EXPECT_EQ(cli("check --instance z2_group --format xml").code, 2);
}

TEST(Cli, MalformedInstanceIsUsageError) {
    const std::string path = temp_path("malformed.json");
    std::ofstream(path) << "{ not json";
    EXPECT_EQ(cli("check --instance " + path).code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, RefusalNamesHypothesis) {
    CliResult r = cli("spectral --instance dual_cocycle --which second --max-degree 2 --format json");
    EXPECT_EQ(r.code, 1);
    const nlohmann::json env = nlohmann::json::parse(r.out);
    EXPECT_FALSE(env.at("ok").get<bool>());
    EXPECT_NE(env.at("refusal").get<std::string>().find("Assume"), std::string::npos);
}

TEST(Cli, VerifyRecordsSeedAndWritesOut) {
    const std::string path = temp_path("congruence.json");
    CliResult r = cli("verify --instance z2_smash --suite congruence --max-degree 2 --seed 11 --format json --out " + path);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    SuiteReport rep = suite_report_from_json(nlohmann::json::parse(ss.str()).at("report"));
    ASSERT_TRUE(rep.seed.has_value());
    EXPECT_EQ(*rep.seed, 11u);
    EXPECT_TRUE(rep.ok());
    std::filesystem::remove(path);
}

TEST(Cli, SpectralTextPrintsPages) {
    CliResult r = cli("spectral --instance z2_smash --max-degree 2 --pages 2");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("E^2"), std::string::npos);
    EXPECT_NE(r.out.find("E^inf"), std::string::npos);
}
