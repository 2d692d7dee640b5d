#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "regrkit/cli.hpp"
#include "regrkit/model_io.hpp"
#include "regrkit/number_format.hpp"

namespace regrkit {
namespace {

namespace fs = std::filesystem;
using namespace regrkit::testing;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("regrkit-cli-" + std::to_string(rd()));
    fs::create_directories(dir_);
    const auto r = run({"ingest", "--in", web_traffic_path(), "--label-cols", kMonth, "--out", path("data.arff")});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, IngestWritesArff) {
  const auto text = read_text(path("data.arff"));
  EXPECT_TRUE(text.starts_with("@relation web_traffic\n@attribute Month string\n"));
  EXPECT_NE(text.find("Apr-11,1000,0,650,0,100,20000\n"), std::string::npos);
}

TEST_F(CliTest, LinearPipeline) {
  const auto r = run({"fit", "linreg", "--data", path("data.arff"), "--target", kPV, "--selection", "m5", "--out",
                      path("m.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "Page_Views =\n  10.0731 * Subscribers_total +\n  68.0727 * Reminder_Emails_Sent +\n  72001.724\n");
  const auto m = std::get<LinearModel>(read_model(read_text(path("m.txt"))));
  EXPECT_NEAR(m.coefficient(kST), 10.0731, 10.0731e-3);
  EXPECT_NEAR(m.coefficient(kREM), 68.0727, 68.0727e-3);
}

TEST_F(CliTest, ExhaustiveSelectionKeepsFourAttributes) {
  const auto r = run({"fit", "linreg", "--data", path("data.arff"), "--target", kPV, "--selection", "exhaustive",
                      "--out", path("m.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::get<LinearModel>(read_model(read_text(path("m.txt")))).terms.size(), 4u);
}

TEST_F(CliTest, CorrelateRoundedMatchesPublishedMatrix) {
  const auto r = run({"correlate", "--data", path("data.arff"), "--round", "2", "--out", path("corr.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string want = ",Subscribers_total,Banner_Ad_Spend,PPC_Spend,Reminder_Emails_Sent,Videos_Upload,Page_Views\n";
  const std::vector<std::string> names{kST, kBAS, kPPC, kREM, kVU, kPV};
  for (std::size_t i = 0; i < names.size(); ++i) {
    want += names[i];
    for (double v : published_correlations()[i]) want += "," + format_rounded(v, 2);
    want += "\n";
  }
  EXPECT_EQ(read_text(path("corr.csv")), want);
}

TEST_F(CliTest, CorrelateDefaultsToSixSignificantDigits) {
  const auto r = run({"correlate", "--data", path("data.arff")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Subscribers_total,1,0.946"), std::string::npos) << r.out;
}

TEST_F(CliTest, SmoregPrintsWeights) {
  const auto r = run({"fit", "smoreg", "--data", path("data.arff"), "--target", kPV, "--filter", "normalize", "--out",
                      path("svr.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("weights (not support vectors):\n + 0.510"));
  EXPECT_NE(r.out.find("(normalized) Videos_Upload"), std::string::npos);
  EXPECT_TRUE(std::holds_alternative<SvrModel>(read_model(read_text(path("svr.txt")))));
}

TEST_F(CliTest, SelectCfs) {
  const auto r = run({"select", "cfs", "--data", path("data.arff"), "--target", kPV});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("Selected attributes: 1,4 : 2\n    Subscribers_total\n    Reminder_Emails_Sent\n"))
      << r.out;
}

TEST_F(CliTest, EvaluateReproducesPredictionColumn) {
  ASSERT_EQ(run({"fit", "linreg", "--data", path("data.arff"), "--target", kPV, "--attrs",
                 std::string(kST) + "," + kREM, "--selection", "none", "--out", path("m.txt")})
                .code,
            0);
  const auto r = run({"evaluate", "--model", path("m.txt"), "--data", path("data.arff"), "--coef-digits", "4",
                      "--ceil-predictions", "--out", path("pred.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "correlation coefficient: 0.9973\n");
  const auto text = read_text(path("pred.csv"));
  EXPECT_TRUE(text.starts_with("actual,predicted,difference,error_pct\n20000,82075,62075,310.375\n")) << text;
  EXPECT_NE(text.find("1900000,1873442,-26558,-1.398\n"), std::string::npos) << text;
}

TEST_F(CliTest, GrowthReport) {
  const auto r = run({"report", "growth", "--data", path("data.arff"), "--target", kPV, "--cost-attrs",
                      std::string(kBAS) + "," + kPPC});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Jun-12,1900000,55486,1707262,192738,11,DEC\n"), std::string::npos) << r.out;

  const auto pretty = run({"report", "growth", "--data", path("data.arff"), "--target", kPV, "--cost-attrs",
                           std::string(kBAS) + "," + kPPC, "--pretty"});
  ASSERT_EQ(pretty.code, 0);
  EXPECT_NE(pretty.out.find("label   page_views  total_cost  estimated_views    diff  profit_pct  trend\n"
                            "Apr-11       20000         650            20000       0           0  NIL\n"),
            std::string::npos)
      << pretty.out;
}

TEST_F(CliTest, DescribeListsEveryAttribute) {
  const auto r = run({"describe", "--data", path("data.arff")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("attribute,kind,count,min,max,mean,stddev\nMonth,label,15,,,,\n"));
  EXPECT_NE(r.out.find("Subscribers_total,numeric,15,1000,145000,46700,42376.6\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExitCodes) {
  auto missing = run({"fit", "linreg", "--data", path("missing.arff"), "--target", kPV, "--out", path("m.txt")});
  EXPECT_EQ(missing.code, kExitData);
  EXPECT_NE(missing.err.find("missing.arff"), std::string::npos);

  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"describe"}).code, kExitUsage);
  EXPECT_EQ(run({"describe", "--data", path("data.arff"), "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"correlate", "--data", path("data.arff"), "--round", "-1"}).code, kExitUsage);
  EXPECT_EQ(run({"fit", "linreg", "--data", path("data.arff"), "--target", kPV, "--selection", "forward", "--out",
                 path("m.txt")})
                .code,
            kExitUsage);
  EXPECT_EQ(run({"fit", "smoreg", "--data", path("data.arff"), "--target", kPV, "--filter", "none", "--c", "0",
                 "--out", path("m.txt")})
                .code,
            kExitUsage);
  EXPECT_FALSE(fs::exists(path("m.txt")));

  auto unknown = run({"fit", "linreg", "--data", path("data.arff"), "--target", "Clicks", "--out", path("m.txt")});
  EXPECT_EQ(unknown.code, kExitData);
  EXPECT_NE(unknown.err.find("Clicks"), std::string::npos);

  auto slow = run({"fit", "smoreg", "--data", path("data.arff"), "--target", kPV, "--filter", "none",
                   "--max-updates", "10", "--out", path("m.txt")});
  EXPECT_EQ(slow.code, kExitNumerical);
  EXPECT_FALSE(fs::exists(path("m.txt")));

  std::ofstream(path("bad.csv")) << "Month,x\nApr,abc$\n";
  auto bad = run({"ingest", "--in", path("bad.csv"), "--label-cols", "Month", "--out", path("bad.arff")});
  EXPECT_EQ(bad.code, kExitData);
  EXPECT_NE(bad.err.find("row 1, column 'x'"), std::string::npos) << bad.err;
  EXPECT_FALSE(fs::exists(path("bad.arff")));
}

TEST_F(CliTest, FailedRunLeavesExistingOutputAlone) {
  std::ofstream(path("keep.txt")) << "previous";
  EXPECT_EQ(run({"fit", "linreg", "--data", path("data.arff"), "--target", "Clicks", "--out", path("keep.txt")}).code,
            kExitData);
  EXPECT_EQ(read_text(path("keep.txt")), "previous");
  for (const auto& e : fs::directory_iterator(dir_)) EXPECT_NE(e.path().extension(), ".tmp");
}

TEST_F(CliTest, HelpDocumentsEveryFlag) {
  const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> cases = {
      {{"ingest"}, {"--in", "--out", "--label-cols"}},
      {{"describe"}, {"--data", "--pretty"}},
      {{"correlate"}, {"--data", "--round", "--out", "--pretty"}},
      {{"fit", "linreg"}, {"--data", "--target", "--attrs", "--selection", "--out"}},
      {{"fit", "smoreg"},
       {"--data", "--target", "--attrs", "--filter", "--c", "--epsilon", "--tol", "--max-updates", "--target-scaling",
        "--out"}},
      {{"select", "cfs"}, {"--data", "--target", "--weighting", "--stale-limit"}},
      {{"evaluate"}, {"--model", "--data", "--out", "--ceil-predictions", "--coef-digits", "--error-decimals"}},
      {{"report", "growth"}, {"--data", "--target", "--cost-attrs", "--baseline-row", "--out", "--pretty"}},
  };
  for (const auto& [cmd, flags] : cases) {
    auto args = cmd;
    args.push_back("--help");
    const auto r = run(args);
    EXPECT_EQ(r.code, kExitOk) << cmd.back();
    for (const auto& f : flags) EXPECT_NE(r.out.find(f), std::string::npos) << cmd.back() << " " << f;
  }
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, DeterministicAndInputsUntouched) {
  const auto before = read_text(path("data.arff"));
  const std::vector<std::string> fit{"fit", "smoreg", "--data", path("data.arff"), "--target", kPV,
                                     "--filter", "standardize", "--out", path("a.txt")};
  ASSERT_EQ(run(fit).code, 0);
  auto again = fit;
  again.back() = path("b.txt");
  ASSERT_EQ(run(again).code, 0);
  EXPECT_EQ(read_text(path("a.txt")), read_text(path("b.txt")));
  EXPECT_EQ(read_text(path("data.arff")), before);
}

}  // namespace
}  // namespace regrkit
