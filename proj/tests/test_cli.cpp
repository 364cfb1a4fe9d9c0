#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "grasscone/cli.hpp"

using namespace grasscone;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<RationalVector> parse_vectors(const json& j) {
    std::vector<RationalVector> out;
    for (const auto& row : j) {
        RationalVector v;
        for (const auto& x : row) v.push_back(parse_rational(x.get<std::string>()));
        out.push_back(v);
    }
    return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
    auto p = std::filesystem::temp_directory_path() / ("grasscone_test_" + name);
    std::ofstream(p) << body;
    return p;
}

const std::vector<std::string> kBlowupNef{"nef", "--base", "builtin:blowup-ruled-elliptic", "--bundle",
                                          "asserted:r=2,d=1", "-k", "1"};

}  // namespace

TEST(Cli, ThetaGolden) {
    auto r = run_cli({"theta", "--hn", "[[1,3],[2,1]]", "-k", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "theta = 2\n");
}

TEST(Cli, DualizeGolden) {
    auto r = run_cli({"dualize", "--gens", "[[1,0],[1,1]]"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("generators: [[0,1],[1,-1]]"), std::string::npos) << r.out;
}

TEST(Cli, BlowupNefInequalities) {
    auto r = run_cli(kBlowupNef);
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* line : {"  y0 >= 0\n", "  -y1 + y3 >= 0\n", "  1/2*y0 - y2 + y3 >= 0\n", "  y1 + y2 - y3 >= 0\n"}) {
        EXPECT_NE(r.out.find(line), std::string::npos) << line << "\n" << r.out;
    }
}

TEST(Cli, RationalSlopesAcceptedInFlags) {
    auto r = run_cli({"zeta", "--hn", "[[2,1/2],[1,-1/3]]", "-k", "1"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "zeta = 1/2\n");
}

TEST(Cli, ValidationErrorsExitTwo) {
    auto r = run_cli({"theta", "--hn", "[[1,3],[2,1]]", "-k", "9"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("k = 9"), std::string::npos) << r.err;

    r = run_cli({"theta", "--hn", "[[1,1],[1,3]]", "-k", "1"});
    EXPECT_EQ(r.code, 2);

    r = run_cli({"frobnicate"});
    EXPECT_EQ(r.code, 2);

    r = run_cli({"contains", "--gens", "[[1,0],[0,1]]", "--vector", "[1,2,3]"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, DocumentErrorsNameTheOffendingPath) {
    auto p = temp_file("bad_gens.json", R"({"version":"1","query":{"command":"dualize","gens":[[1,0],[1,0,0]]}})");
    auto r = run_cli({"--input", p.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("/query/gens/1"), std::string::npos) << r.err;

    p = temp_file("bad_version.json", R"({"version":"2","query":{"command":"dualize","gens":[[1,0]]}})");
    r = run_cli({"--input", p.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("/version"), std::string::npos) << r.err;

    p = temp_file("bad_rational.json",
                  R"({"version":"1","base":{"curve":{}},"bundle":{"hn":[[1,"1/0"]]},"query":{"command":"theta","k":1}})");
    r = run_cli({"--input", p.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("/bundle/hn/0"), std::string::npos) << r.err;
}

TEST(Cli, PreconditionFailuresExitThree) {
    auto r = run_cli({"eff", "--base", "builtin:p2", "--bundle", "sum:[[0],[2]]", "-k", "1"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("not semistable"), std::string::npos) << r.err;

    r = run_cli({"nef", "--base", "builtin:p2", "--bundle", "chern:r=2,c1=[2],c2=1", "-k", "1"});
    EXPECT_EQ(r.code, 3) << r.err;

    r = run_cli({"tower", "--base", "builtin:blowup-ruled-elliptic", "--stage", "asserted:r=2,d=1;k=1"});
    EXPECT_EQ(r.code, 3) << r.err;
}

TEST(Cli, JsonAndTextDescribeTheSameCone) {
    auto text = run_cli(kBlowupNef);
    auto args = kBlowupNef;
    args.push_back("--json");
    auto js = run_cli(args);
    ASSERT_EQ(js.code, 0) << js.err;
    const json j = json::parse(js.out);
    EXPECT_EQ(j["version"], "1");
    EXPECT_EQ(j["command"], "nef");
    const auto gens = parse_vectors(j["generators"]);
    const auto hs = parse_vectors(j["halfspaces"]);
    EXPECT_NE(text.out.find("generators: " + to_string(gens)), std::string::npos);
    EXPECT_NE(text.out.find("halfspaces: " + to_string(hs)), std::string::npos);
}

TEST(Cli, JsonRoundTripIsStableUnderRecanonicalization) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"eff", "--base", "builtin:blowup-ruled-elliptic", "--bundle", "asserted:r=3,d=2", "-k", "2", "--json"},
             {"nef", "--base", "builtin:p2", "--bundle", "sum:[[1],[1],[1]]", "-k", "2", "--json"},
             {"dualize", "--gens", "[[1,0,0],[0,1,0],[1,1,-1],[0,0,1]]", "--json"}}) {
        auto r = run_cli(args);
        ASSERT_EQ(r.code, 0) << r.err;
        const json j = json::parse(r.out);
        const auto gens = parse_vectors(j["generators"]);
        const std::size_t dim = j["basis"].size();
        // Feed the printed generators back through dualize twice: same canonical list, same text.
        auto once = run_cli({"dualize", "--gens", to_string(gens), "--dim", std::to_string(dim), "--json"});
        ASSERT_EQ(once.code, 0) << once.err;
        auto twice = run_cli({"dualize", "--gens", to_string(parse_vectors(json::parse(once.out)["generators"])),
                              "--dim", std::to_string(dim), "--json"});
        ASSERT_EQ(twice.code, 0) << twice.err;
        EXPECT_EQ(json::parse(twice.out)["generators"], j["generators"]);
        EXPECT_EQ(canonical(Cone::from_generators(dim, gens)).generators(), gens);
    }
}

TEST(Cli, InputDocumentMatchesFlags) {
    auto from_flags = run_cli({"curve-cones", "--hn", "[[1,3],[2,1]]", "-k", "2"});
    auto from_doc = run_cli({"--input", std::string(GRASSCONE_SAMPLES_DIR) + "/curve_theta.json"});
    EXPECT_EQ(from_doc.code, 0) << from_doc.err;
    EXPECT_EQ(from_doc.out, from_flags.out);
}

TEST(Cli, BatchOverSamples) {
    auto r = run_cli({"--batch", GRASSCONE_SAMPLES_DIR});
    // unstable_p2.json is a deliberate precondition failure.
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("== p2_nef_eff.json (exit 0)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("== unstable_p2.json (exit 3)"), std::string::npos) << r.out;
    const auto a = r.out.find("== blowup_nef.json");
    const auto b = r.out.find("== p2_tower.json");
    ASSERT_NE(a, std::string::npos);
    EXPECT_LT(a, b);
    // Deterministic across runs despite parallel evaluation.
    EXPECT_EQ(run_cli({"--batch", GRASSCONE_SAMPLES_DIR}).out, r.out);
}

TEST(Cli, MaxDimEnvironmentCap) {
    ::setenv("GRASSCONE_MAX_DIM", "2", 1);
    auto r = run_cli({"dualize", "--gens", "[[1,0,0]]"});
    ::unsetenv("GRASSCONE_MAX_DIM");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("GRASSCONE_MAX_DIM"), std::string::npos) << r.err;
    EXPECT_EQ(run_cli({"dualize", "--gens", "[[1,0,0]]"}).code, 0);
}

TEST(Cli, TowerListsLastStageFirst) {
    auto r = run_cli({"tower", "--base", "builtin:p2", "--stage", "sum:[[1],[1]];k=1", "--stage", "sum:[[1],[1]];k=1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LT(r.out.find("stage-2"), r.out.find("stage-1"));
    EXPECT_NE(r.out.find("generators: [[0,0,1],[0,1,-1],[1,0,-1]]"), std::string::npos) << r.out;
}

TEST(Cli, Semistability) {
    auto r = run_cli({"semistable", "--base", "builtin:p2", "--bundle", "sum:[[1],[1]]"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "semistable = true\n");
    r = run_cli({"semistable", "--base", "builtin:p2", "--bundle", "chern:r=2,c1=[2],c2=1"});
    EXPECT_EQ(r.code, 3);
}
