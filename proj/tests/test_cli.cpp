#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "commands.hpp"
#include "ffp/io.hpp"

using namespace ffp;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "ffp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string kTwoRoots = R"({"degree":2,"convention":"signed","coeffs":["1","4","3"]})";

}  // namespace

TEST(Cli, Cumulants) {
    const auto r = run({"cumulants", "--poly", kTwoRoots, "--j", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(parse_rational(j["values"][1].get<std::string>()), Rational(2));
    EXPECT_EQ(j["run_config"]["subcommand"], "cumulants");
    EXPECT_EQ(j["run_config"]["scalar_mode"], "rational");
}

TEST(Cli, ConvolveWithIdentityEchoes) {
    const auto r = run({"convolve-mult", "--p", kTwoRoots, "--q", "identity"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(polynomial_from_json<Rational>(j), polynomial_from_json<Rational>(Json::parse(kTwoRoots)));
}

TEST(Cli, DifferentiateNormalized) {
    const auto r = run({"differentiate", "--poly", kTwoRoots, "--n", "1", "--normalized"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(Json::parse(r.out)["sides_agree"].get<bool>());
}

TEST(Cli, JensenDerivativeRoutes) {
    const auto r = run({"jensen", "--function", "bessel:1/2", "--d", "3", "--n", "4", "--type", "derivative"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(Json::parse(r.out)["routes_agree"].get<bool>());
}

TEST(Cli, VerifyIdentities) {
    const auto r = run({"verify-identities", "--max-d", "6"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("identities hold"), std::string::npos);
}

TEST(Cli, ExperimentWritesFiles) {
    const auto dir = std::filesystem::temp_directory_path() / "ffp_cli_experiment";
    std::filesystem::remove_all(dir);
    const auto r = run({"--out", dir.string(), "experiment", "lln", "--config",
                        R"({"family":{"kind":"alternating","a":"1"},"a":"1","d":3,"n_list":[4,8]})"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(std::filesystem::exists(dir / "lln_alternating.csv"));
    const auto side = read_json_file((dir / "lln_alternating.json").string());
    EXPECT_EQ(side["config"]["run_config"]["subcommand"], "experiment");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"cumulants", "--poly", kTwoRoots, "--j", "2", "--bogus"}).code, cli::kUsage);
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"cumulants", "--poly", "{not json", "--j", "2"}).code, cli::kPrecondition);
    EXPECT_EQ(run({"cumulants", "--poly", "/nonexistent/p.json", "--j", "2"}).code, cli::kPrecondition);
    EXPECT_EQ(run({"cumulants", "--poly", kTwoRoots, "--j", "5"}).code, cli::kPrecondition);
    EXPECT_EQ(run({"differentiate", "--poly", kTwoRoots, "--n", "3"}).code, cli::kPrecondition);
    EXPECT_EQ(run({"experiment", "wigner", "--config", R"({"d":2,"n":10})"}).code, cli::kPrecondition);
    EXPECT_EQ(run({"--max-pair-j", "3", "convolve-add", "--p", kTwoRoots, "--q", kTwoRoots}).code, 0);
}
