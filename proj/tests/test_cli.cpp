#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qbc/builders.hpp"
#include "qbc/channel_io.hpp"
#include "qbc/cli.hpp"

using namespace qbc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qbc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const KrausChannel& ch, const ConnectionGraph& graph) {
    const auto path = (dir_ / name).string();
    write_channel_file(path, ch, graph);
    return path;
  }
  std::string write_text(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }
  std::string qubit(const KrausChannel& ch) {
    const std::size_t d[] = {2};
    return write("ch.json", ch, ConnectionGraph::diagonal(d));
  }

  fs::path dir_;
};

nlohmann::json rows_of(const std::string& text) { return nlohmann::json::parse(text).at("rows"); }

}  // namespace

TEST_F(CliTest, ValidateExitCodes) {
  EXPECT_EQ(run_cli({"validate", qubit(builders::depolarizing(2, 0.3))}).code, cli::kExitOk);

  const auto bad = write_text("bad.json", R"({"in_dims":[2],"out_dims":[2],
    "connections":[{"sender":0,"receiver":0,"ref_dim":2}],
    "kraus":[[[[0.9,0],[0,0]],[[0,0],[0.9,0]]]]})");
  const auto invalid = run_cli({"validate", bad});
  EXPECT_EQ(invalid.code, cli::kExitCheckFailed);
  EXPECT_NE(invalid.out.find("valid,false"), std::string::npos);
  EXPECT_NE(invalid.err.find("completeness defect 0.1899"), std::string::npos);

  const auto broken = write_text("broken.json", "{\"in_dims\": [2],\n \"out_dims\": [2");
  const auto parsed = run_cli({"validate", broken});
  EXPECT_EQ(parsed.code, cli::kExitParseError);
  EXPECT_NE(parsed.err.find("line 2"), std::string::npos);

  EXPECT_EQ(run_cli({"validate", (dir_ / "missing.json").string()}).code, cli::kExitParseError);
  EXPECT_EQ(run_cli({"validate"}).code, cli::kExitParseError);
  EXPECT_EQ(run_cli({"nonsense"}).code, cli::kExitParseError);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, FidelityValues) {
  const auto r = run_cli({"fidelity", qubit(builders::depolarizing(2, 0.4)), "--format", "json",
                          "--samples", "200", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = rows_of(r.out);
  int seen = 0;
  for (const auto& row : rows) {
    const auto name = row.at("name").get<std::string>();
    const double v = row.at("value").get<double>();
    if (name == "channel_fidelity") {
      EXPECT_NEAR(v, 0.7, 1e-12);
      ++seen;
    } else if (name == "average_fidelity" && row.at("method") == "exact") {
      EXPECT_NEAR(v, 0.8, 1e-12);
      ++seen;
    } else if (name == "min_fidelity") {
      EXPECT_NEAR(v, 0.8, 1e-6);
      ++seen;
    }
  }
  EXPECT_EQ(seen, 4);
}

TEST_F(CliTest, FidelityGroupRowsForTwoConnections) {
  const std::size_t d[] = {2, 2};
  const auto graph = ConnectionGraph::diagonal(d);
  const KrausChannel parts[] = {builders::identity(SystemLayout({2})), builders::depolarizing(2, 1.0)};
  const auto r = run_cli({"fidelity", write("pair.json", builders::product(parts, graph), graph), "--samples", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("group_fidelity{0}"), std::string::npos);
  EXPECT_NE(r.out.find("group_fidelity{1}"), std::string::npos);
}

TEST_F(CliTest, RegionRows) {
  const std::size_t d[] = {2, 2};
  const auto graph = ConnectionGraph::diagonal(d);
  const auto path = write("id.json", builders::identity(SystemLayout({2, 2})), graph);
  const auto single = run_cli({"region", path, "--weights", "1,1", "--restarts", "2", "--format", "json"});
  ASSERT_EQ(single.code, 0) << single.err;
  const auto rows = rows_of(single.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_GE(rows[0].at("rates")[0].get<double>(), 0.99);
  EXPECT_GE(rows[0].at("rates")[1].get<double>(), 0.99);

  const auto grid = run_cli({"region", path, "--grid", "2", "--restarts", "1"});
  EXPECT_EQ(grid.code, 0) << grid.err;
  EXPECT_EQ(run_cli({"region", path, "--grid", "2", "--weights", "1,1"}).code, cli::kExitParseError);
  EXPECT_EQ(run_cli({"region", path, "--weights", "1"}).code, cli::kExitCheckFailed);
  EXPECT_EQ(run_cli({"region", path, "--n", "4"}).code, cli::kExitResource);
}

TEST_F(CliTest, VerifyFixturesPass) {
  const auto r = run_cli({"verify", "--fixtures", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find(",fail"), std::string::npos);
  EXPECT_NE(r.out.find("statistical (sampled ensemble)"), std::string::npos);
  EXPECT_NE(r.out.find("qutrit-erasure-to-zero"), std::string::npos);
  EXPECT_EQ(r.out, run_cli({"verify", "--fixtures", "--seed", "7"}).out);
}

TEST_F(CliTest, VerifyZeroStatisticalToleranceFails) {
  const auto r = run_cli({"verify", qubit(builders::dephasing(0.2)), "--tol-stat", "0", "--tol-exact", "0",
                          "--samples", "100"});
  EXPECT_EQ(r.code, cli::kExitCheckFailed);
  EXPECT_NE(r.out.find(",fail"), std::string::npos);
}

TEST_F(CliTest, VerifyNeedsInput) { EXPECT_EQ(run_cli({"verify"}).code, cli::kExitParseError); }

TEST_F(CliTest, TwirlAndTeleportWriteChannels) {
  const auto path = qubit(builders::dephasing(0.2));
  const auto tw = run_cli({"twirl", path});
  ASSERT_EQ(tw.code, 0) << tw.err;
  const auto twirled = read_channel(tw.out);
  EXPECT_TRUE(validate(twirled.channel).ok);

  const auto out_path = (dir_ / "tele.json").string();
  const auto tp = run_cli({"teleport", path, "--out", out_path});
  ASSERT_EQ(tp.code, 0) << tp.err;
  EXPECT_TRUE(tp.out.empty());
  const auto tele = read_channel_file(out_path);
  EXPECT_EQ(tele.channel.in_dim(), 2u);
  EXPECT_EQ(run_cli({"validate", out_path}).code, 0);
}

TEST_F(CliTest, OutputIsReproducible) {
  const auto path = qubit(builders::depolarizing(2, 0.1));
  const std::vector<std::string> args{"fidelity", path, "--seed", "11", "--samples", "300"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
  const auto other = run_cli({"fidelity", path, "--seed", "12", "--samples", "300"});
  EXPECT_NE(run_cli(args).out, other.out);
}

TEST_F(CliTest, DimensionCapIsAResourceError) {
  const std::size_t d[] = {64};
  const auto path = write("big.json", builders::identity(SystemLayout({64})), ConnectionGraph::diagonal(d));
  EXPECT_EQ(run_cli({"region", path, "--n", "3", "--restarts", "1"}).code, cli::kExitResource);
}
