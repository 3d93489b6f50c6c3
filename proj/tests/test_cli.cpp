#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ratiolim/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using ratiolim::cli::run;

namespace {

const fs::path kGolden = RATIOLIM_GOLDEN_DIR;
const std::string kFixtures = std::string(RATIOLIM_FIXTURE_DIR) + "/oeis";

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
  int exit_code;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Golden : public ::testing::TestWithParam<GoldenCase> {};

}  // namespace

TEST_P(Golden, MatchesFile) {
  const GoldenCase& c = GetParam();
  const Result r = call(c.args);
  ASSERT_EQ(r.code, c.exit_code) << r.err;
  const bool table = std::find(c.args.begin(), c.args.end(), "table") != c.args.end();
  const fs::path file = kGolden / (c.name + (table ? ".txt" : ".json"));
  if (std::getenv("RATIOLIM_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(file, std::ios::binary) << r.out;
    GTEST_SKIP() << "rewrote " << file;
  }
  ASSERT_TRUE(fs::exists(file)) << file << " missing; rerun with RATIOLIM_UPDATE_GOLDEN=1";
  EXPECT_EQ(r.out, read_file(file));
}

INSTANTIATE_TEST_SUITE_P(
    Cli, Golden,
    ::testing::Values(
        GoldenCase{"generate_fibonacci_table", {"generate", "--weights", "1,1", "--init", "0,1", "--count", "10",
                                                "--format", "table"}, 0},
        GoldenCase{"generate_fibonacci", {"generate", "--weights", "1,1", "--init", "0,1", "--count", "10"}, 0},
        GoldenCase{"generate_gaussian", {"generate", "--weights", "1/2+i,2", "--init", "0,1", "--count", "6"}, 0},
        GoldenCase{"analyze_fibonacci", {"analyze", "--weights", "1,1"}, 0},
        GoldenCase{"analyze_alternating", {"analyze", "--weights", "0,1"}, 0},
        GoldenCase{"analyze_degenerate", {"analyze", "--weights", "4,-2,-3"}, 0},
        GoldenCase{"analyze_degenerate_table", {"analyze", "--weights", "4,-2,-3", "--format", "table"}, 0},
        GoldenCase{"ratio_two_two", {"ratio", "--weights", "2,2", "--init", "0,1"}, 0},
        GoldenCase{"ratio_skipped_zero", {"ratio", "--weights", "1,1", "--init", "-1,1"}, 0},
        GoldenCase{"ratio_not_converged", {"ratio", "--weights", "0,1", "--init", "0,1"}, 2},
        GoldenCase{"audit_lucas", {"audit", "--weights", "1,1", "--init", "-1,2"}, 0},
        GoldenCase{"audit_degenerate", {"audit", "--weights", "4,-2,-3", "--init", "1,1,2"}, 0},
        GoldenCase{"audit_degenerate_table", {"audit", "--weights", "4,-2,-3", "--init", "1,1,2", "--format",
                                              "table"}, 0},
        GoldenCase{"audit_random_seed42", {"audit-random", "--seed", "42", "--count", "20"}, 0},
        GoldenCase{"family_p1", {"family", "--p", "1", "--n-max", "10"}, 0},
        GoldenCase{"family_p2_table", {"family", "--p", "2", "--n-max", "10", "--format", "table"}, 0},
        GoldenCase{"oeis_verify_fibonacci", {"oeis", "verify", "--signature", "1,1", "--offline", "--cache-dir",
                                             kFixtures}, 0},
        GoldenCase{"oeis_batch", {"oeis", "batch", "--values", "1,2", "--lengths", "2..3", "--offline",
                                  "--cache-dir", kFixtures}, 0}),
    [](const ::testing::TestParamInfo<GoldenCase>& info) { return info.param.name; });

TEST(Cli, AnalyzeExamples) {
  const json fib = call({"analyze", "--weights", "1,1"}).doc();
  EXPECT_NEAR(fib["results"]["dominance"]["lambda0"]["re"].get<double>(), 1.6180339887, 1e-10);
  EXPECT_TRUE(fib["results"]["dominance"]["is_asymptotically_simple"].get<bool>());

  const json alt = call({"analyze", "--weights", "0,1"}).doc();
  EXPECT_FALSE(alt["results"]["dominance"]["is_asymptotically_simple"].get<bool>());

  const json deg = call({"analyze", "--weights", "4,-2,-3"}).doc();
  EXPECT_NEAR(deg["results"]["dominance"]["lambda0"]["re"].get<double>(), 3.0, 1e-12);
}

TEST(Cli, ExitCodes) {
  const Result trivial = call({"generate", "--weights", "1,1", "--init", "0,0"});
  EXPECT_EQ(trivial.code, 1);
  EXPECT_NE(trivial.err.find("RejectedTrivial"), std::string::npos) << trivial.err;

  EXPECT_EQ(call({"ratio", "--weights", "0,1", "--init", "0,1"}).code, 2);
  EXPECT_EQ(call({"audit", "--weights", "4,-2,-3", "--init", "1,1,2", "--fail-on-violation"}).code, 3);
  EXPECT_EQ(call({"audit", "--weights", "1,1", "--init", "-1,2", "--fail-on-violation"}).code, 0);
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"generate", "--weights", "1,0", "--init", "0,1"}).code, 1);
  EXPECT_EQ(call({"ratio", "--weights", "1,1", "--init", "0,1", "--ratio-tol", "0"}).code, 1);
  EXPECT_EQ(call({"generate", "--weights", "1,1", "--init", "0,1", "--format", "xml"}).code, 1);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, ParseErrorsReportPosition) {
  const Result r = call({"analyze", "--weights", "1,2x"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("position 3"), std::string::npos) << r.err;
}

TEST(Cli, HorizonMustCoverFourN) {
  const Result r = call({"audit", "--weights", "1,1,1", "--init", "0,0,1", "--horizon", "11"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("4n"), std::string::npos) << r.err;
  EXPECT_EQ(call({"audit", "--weights", "1,1,1", "--init", "0,0,1", "--horizon", "12"}).code, 0);
}

TEST(Cli, ConfigFile) {
  const fs::path cfg = fs::temp_directory_path() / "ratiolim-cli-config.json";
  std::ofstream(cfg) << R"({"weights": "2,2", "init": "0,1", "ratio_tol": 1e-12})";
  const Result r = call({"ratio", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.doc()["results"]["estimate"]["value"]["re"].get<double>(), 2.7320508075688772, 1e-11);

  // Command-line values win over the file.
  const Result o = call({"ratio", "--config", cfg.string(), "--weights", "1,1"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NEAR(o.doc()["results"]["estimate"]["value"]["re"].get<double>(), 1.6180339887498949, 1e-11);

  std::ofstream(cfg) << R"({"weights": "2,2", "no_such_option": 1})";
  EXPECT_EQ(call({"ratio", "--config", cfg.string()}).code, 1);
  fs::remove(cfg);
}

TEST(Cli, CacheDirFromEnvironment) {
  ::setenv("RATIOLIM_CACHE_DIR", kFixtures.c_str(), 1);
  EXPECT_EQ(ratiolim::cli::default_cache_dir(), kFixtures);
  const Result r = call({"oeis", "verify", "--signature", "1,1,1", "--limit", "5", "--offline"});
  ::unsetenv("RATIOLIM_CACHE_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  bool tribonacci = false;
  const json doc = r.doc();
  for (const json& rec : doc["results"]["records"]) {
    EXPECT_TRUE(rec["agrees"].get<bool>()) << rec["id"];
    tribonacci = tribonacci || rec["id"] == "A000073";
  }
  EXPECT_TRUE(tribonacci);

  const fs::path empty = fs::temp_directory_path() / "ratiolim-cli-empty-cache";
  fs::remove_all(empty);
  const Result missing = call({"oeis", "verify", "--signature", "1,1", "--offline", "--cache-dir", empty.string()});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("NetworkUnavailable"), std::string::npos) << missing.err;
}

TEST(Cli, FamilyExamples) {
  const json p1 = call({"family", "--p", "1", "--n-max", "10"}).doc();
  const json& rows = p1["results"]["rows"];
  EXPECT_NEAR(rows[0]["lambda0"].get<double>(), 1.6180, 1e-4);
  EXPECT_NEAR(rows[1]["lambda0"].get<double>(), 1.8393, 1e-4);
  EXPECT_NEAR(rows[2]["lambda0"].get<double>(), 1.9276, 1e-4);
  EXPECT_LT(std::abs(rows.back()["lambda0"].get<double>() - 2.0), 0.002);
  EXPECT_TRUE(p1["results"]["monotone_increasing"].get<bool>());

  const json half = call({"family", "--p", "0.5", "--n-max", "10"}).doc();
  EXPECT_TRUE(half["results"]["monotone_increasing"].get<bool>());
  EXPECT_LT(half["results"]["rows"].back()["lambda0"].get<double>(), 1.5);

  EXPECT_EQ(call({"family", "--p", "-1"}).code, 1);
}

TEST(Cli, NegativeValuesNeedNoEquals) {
  const Result r = call({"generate", "--weights", "1,1", "--init", "-1,2", "--count", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, call({"generate", "--weights=1,1", "--init=-1,2", "--count=4"}).out);
}
