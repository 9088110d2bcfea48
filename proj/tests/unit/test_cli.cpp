#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "reslab/json_io.hpp"
#include "reslab_app/app.hpp"

namespace fs = std::filesystem;
using namespace reslab;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("reslab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_config(const std::string& name, const PotentialConfig& c) {
    const auto p = dir_ / name;
    std::ofstream(p) << to_json(c).dump();
    return p.string();
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "reslab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return app::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST(CliHelpers, ParseGrid) {
  EXPECT_EQ(app::parse_grid("600x300"), std::make_pair(600, 300));
  EXPECT_EQ(app::parse_grid("1x1"), std::make_pair(1, 1));
  EXPECT_THROW(app::parse_grid("600"), std::invalid_argument);
  EXPECT_THROW(app::parse_grid("0x5"), std::invalid_argument);
  EXPECT_THROW(app::parse_grid("5000x5"), std::invalid_argument);
  EXPECT_THROW(app::parse_grid("3x4y"), std::invalid_argument);
}

TEST(CliHelpers, ConfigHashIsStable) {
  const auto a = reslab::testing::two_delta();
  EXPECT_EQ(app::config_hash(a), app::config_hash(reslab::testing::two_delta()));
  EXPECT_NE(app::config_hash(a), app::config_hash(reslab::testing::two_delta(1e-6, -1.0)));
  EXPECT_EQ(app::config_hash(a).size(), 16u);
}

TEST(CliHelpers, ExitCodes) {
  EXPECT_EQ(app::exit_code_for(Errc::NonpositiveBeta), 2);
  EXPECT_EQ(app::exit_code_for(Errc::Parse), 2);
  EXPECT_EQ(app::exit_code_for(Errc::InvalidWindow), 2);
  EXPECT_EQ(app::exit_code_for(Errc::OverflowGuard), 4);
  EXPECT_EQ(app::exit_code_for(Errc::MaxDepthExceeded), 5);
  EXPECT_EQ(app::exit_code_for(Errc::NotNearSingular), 3);
}

TEST_F(Cli, PredictTwoDelta) {
  const auto cfg = write_config("n2.json", reslab::testing::two_delta());
  const auto out = dir_ / "pred.json";
  ASSERT_EQ(run({"predict", "--config", cfg, "--out", out.string()}), 0) << err_.str();
  const json doc = json::parse(slurp(out));
  ASSERT_EQ(doc["gamma_candidates"].size(), 1u);
  EXPECT_NEAR(doc["gamma_candidates"][0]["gamma"].get<double>(), 0.0439339, 1e-7);
  EXPECT_TRUE(doc["consistent"].get<bool>());
  EXPECT_TRUE(fs::exists(dir_ / "pred.manifest.json"));
}

TEST_F(Cli, PredictCaseTwo) {
  const auto cfg = write_config("n3.json", reslab::testing::three_delta_case2());
  ASSERT_EQ(run({"predict", "--config", cfg}), 0);
  const json doc = json::parse(out_.str().substr(0, out_.str().rfind('}') + 1));
  EXPECT_EQ(doc["case_id"], 2);
  const auto g = doc["closed_form_gammas"];
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(g[0].get<double>(), 0.1, 1e-12);
  EXPECT_NEAR(g[1].get<double>(), 0.106066, 1e-6);
}

TEST_F(Cli, PredictFiveDeltaWithinBound) {
  const auto cfg = write_config("n5.json", reslab::testing::five_delta());
  ASSERT_EQ(run({"predict", "--config", cfg}), 0);
  const json doc = json::parse(out_.str());
  EXPECT_EQ(doc["candidate_bound"], 15);
  EXPECT_LE(doc["candidate_count"].get<int>(), 15);
  EXPECT_GE(doc["candidate_count"].get<int>(), 1);
}

TEST_F(Cli, SolveWritesCsvJsonManifest) {
  const auto cfg = write_config("n2.json", reslab::testing::two_delta());
  const auto stem = dir_ / "out" / "n2";
  ASSERT_EQ(run({"solve", "--config", cfg, "--out", stem.string()}), 0) << err_.str();
  const std::string csv = slurp(dir_ / "out" / "n2.csv");
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  EXPECT_TRUE(lines == 33 || lines == 34);
  const json doc = json::parse(slurp(dir_ / "out" / "n2.json"));
  EXPECT_EQ(doc["roots"].size() + 1, static_cast<std::size_t>(lines));
  const json man = json::parse(slurp(dir_ / "out" / "n2.manifest.json"));
  EXPECT_EQ(man["command"], "solve");
  EXPECT_EQ(man["outputs"].size(), 2u);
  EXPECT_EQ(man["config_hash"], app::config_hash(reslab::testing::two_delta()));
  EXPECT_NE(out_.str().find("cluster 0"), std::string::npos);
}

TEST_F(Cli, SolveIsDeterministicAcrossThreads) {
  const auto cfg = write_config("n3.json", reslab::testing::three_delta_case2());
  ASSERT_EQ(run({"solve", "--config", cfg, "--out", (dir_ / "a").string(), "--threads", "1"}), 0);
  ASSERT_EQ(run({"solve", "--config", cfg, "--out", (dir_ / "b").string(), "--threads", "4"}), 0);
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));
  EXPECT_EQ(slurp(dir_ / "a.json"), slurp(dir_ / "b.json"));
}

TEST_F(Cli, SolveIncompleteExitCode) {
  const auto cfg = write_config("n2.json", reslab::testing::two_delta());
  EXPECT_EQ(run({"solve", "--config", cfg, "--max-depth", "1", "--out", (dir_ / "p").string()}), 5);
  EXPECT_TRUE(fs::exists(dir_ / "p.csv"));
}

TEST_F(Cli, ErrorsMapToExitCodes) {
  const auto cfg = write_config("n2.json", reslab::testing::two_delta());
  EXPECT_EQ(run({"solve", "--config", cfg, "--window", "0.9", "1.1", "0", "1e-6"}), 2);
  EXPECT_EQ(run({"solve", "--config", cfg, "--window", "0.9", "1.1", "-1", "0"}), 4);
  EXPECT_EQ(run({"phase", "--config", cfg, "--window", "0.9", "1.1", "-1", "0", "--out",
                 (dir_ / "x.pgm").string()}),
            4);
  EXPECT_EQ(run({"solve", "--config", (dir_ / "missing.json").string()}), 2);
  EXPECT_EQ(run({"solve"}), 2);
  EXPECT_EQ(run({"bogus"}), 2);
  const auto bad = dir_ / "bad.json";
  std::ofstream(bad) << R"({"h": 1e-6, "deltas": [{"x": -10, "beta": 0}, {"x": 7, "beta": 0.5}]})";
  EXPECT_EQ(run({"verify", "--config", bad.string()}), 2);
  EXPECT_NE(err_.str().find("NonpositiveBeta"), std::string::npos);
}

TEST_F(Cli, PhaseSinglePixelIsCentre) {
  const auto c = reslab::testing::two_delta();
  const auto cfg = write_config("n2.json", c);
  const auto out = dir_ / "one.csv";
  ASSERT_EQ(run({"phase", "--config", cfg, "--grid", "1x1", "--out", out.string()}), 0);
  std::istringstream in(slurp(out));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "re,im,arg");
  const double arg = std::stod(row.substr(row.rfind(',') + 1));
  const SecularFunction f(c);
  EXPECT_DOUBLE_EQ(arg, std::arg(f(default_window(c.h()).center())));
}

TEST_F(Cli, PhasePgmIsDeterministic) {
  const auto cfg = write_config("n2.json", reslab::testing::two_delta());
  const auto a = dir_ / "a.pgm", b = dir_ / "b.pgm";
  ASSERT_EQ(run({"phase", "--config", cfg, "--grid", "60x30", "--out", a.string(), "--threads", "1"}), 0);
  ASSERT_EQ(run({"phase", "--config", cfg, "--grid", "60x30", "--out", b.string(), "--threads", "4"}), 0);
  const std::string pa = slurp(a);
  EXPECT_EQ(pa, slurp(b));
  const std::string header = "P5\n60 30\n255\n";
  ASSERT_EQ(pa.size(), header.size() + 60 * 30);
  EXPECT_EQ(pa.substr(0, header.size()), header);
}

TEST_F(Cli, PhaseRequiresOut) {
  const auto cfg = write_config("n2.json", reslab::testing::two_delta());
  EXPECT_EQ(run({"phase", "--config", cfg}), 2);
  EXPECT_EQ(run({"phase", "--config", cfg, "--format", "json", "--out", (dir_ / "p").string()}), 2);
}

TEST_F(Cli, VerifyOracleConfigsPass) {
  const auto n2 = write_config("n2.json", reslab::testing::two_delta());
  EXPECT_EQ(run({"verify", "--config", n2}), 0) << out_.str();
  const auto n3 = write_config("n3.json", reslab::testing::three_delta_case2());
  EXPECT_EQ(run({"verify", "--config", n3}), 0) << out_.str();
}

TEST_F(Cli, VerifyCaseOnePrintsBothLevels) {
  const auto cfg = write_config("n3c1.json", reslab::testing::three_delta_case1());
  const auto out = dir_ / "v.json";
  EXPECT_EQ(run({"verify", "--config", cfg, "--out", out.string()}), 0);
  const json doc = json::parse(slurp(out));
  const auto& note = doc["single_string_level"];
  EXPECT_NEAR(note["theorem_leading_im"].get<double>(), -1.49e-6, 0.01e-6);
  EXPECT_DOUBLE_EQ(note["quoted_im"].get<double>(), -3e-7);
  EXPECT_TRUE(note["discrepancy"].get<bool>());
  EXPECT_NE(out_.str().find("DISCREPANCY"), std::string::npos);
}

TEST_F(Cli, WriteAtomicReplaces) {
  const auto p = dir_ / "nested" / "f.txt";
  app::write_atomic(p, "one");
  app::write_atomic(p, "two");
  EXPECT_EQ(slurp(p), "two");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(p.parent_path())) ++files;
  EXPECT_EQ(files, 1u);
}
