#include "pslab_cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace pslab::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pslab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write(const std::string& p, const std::string& text) const {
    std::ofstream out(p, std::ios::binary);
    out << text;
  }

  fs::path dir_;
};

TEST_F(Cli, GenSorted) {
  const auto r = run_cli({"gen", "--dist", "sorted", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "value\n0\n1\n2\n");
}

TEST_F(Cli, GenBinomialReplays) {
  const auto a = path("a.csv"), b = path("b.csv");
  for (const auto& p : {a, b}) {
    EXPECT_EQ(run_cli({"gen", "--dist", "binomial", "--m", "100", "--p", "0.5", "--n", "5", "--seed", "7", "--out", p})
                  .code,
              0);
  }
  const auto text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
}

TEST_F(Cli, GenRejectsBadProbability) {
  const auto r = run_cli({"gen", "--dist", "binomial", "--m", "10", "--p", "1.5", "--n", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, GenRejectsUnknownDistribution) {
  EXPECT_EQ(run_cli({"gen", "--dist", "poisson", "--n", "5"}).code, 2);
  EXPECT_EQ(run_cli({"gen", "--dist", "binomial", "--n", "5"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
}

TEST_F(Cli, BenchWritesTrialsAndSummary) {
  const auto out = path("trials.csv");
  const auto r = run_cli({"bench", "--alg", "partition", "--dist", "cauchy", "--n-grid", "1000:3000:1000", "--reps",
                          "4", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto records = read_csv(out);
  EXPECT_EQ(records.size(), 12u);
  EXPECT_NE(r.out.find("mean_cmp"), std::string::npos);
  EXPECT_NE(r.out.find("R^2(comparisons)"), std::string::npos);
}

TEST_F(Cli, BenchSingleSizeToStdout) {
  const auto r = run_cli({"bench", "--alg", "heap", "--dist", "uniform", "--n-grid", "100:100:100", "--reps", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  EXPECT_EQ(read_csv(in).size(), 2u);
  EXPECT_NE(r.err.find("mean_s"), std::string::npos);
}

TEST_F(Cli, BenchUsesConfigDefaults) {
  const auto cfg = path("lab.cfg");
  write(cfg, "# settings\nseed = 99\ngrid_reps=3\n");
  const auto out = path("t.csv");
  ASSERT_EQ(run_cli({"bench", "--alg", "quick", "--n-grid", "50", "--config", cfg, "--out", out}).code, 0);
  const auto records = read_csv(out);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].seed, derive_seed(99, Algorithm::Quick, dist::Cauchy{}, 50, 0));
}

TEST_F(Cli, BenchRejectsUnknownAlgorithmAndBadGrid) {
  EXPECT_EQ(run_cli({"bench", "--alg", "bogo", "--n-grid", "10"}).code, 2);
  EXPECT_EQ(run_cli({"bench", "--alg", "quick", "--n-grid", "10:5:1"}).code, 2);
  EXPECT_EQ(run_cli({"bench", "--alg", "quick", "--n-grid", "a:b"}).code, 2);
}

TEST_F(Cli, BadConfigIsUsageError) {
  const auto cfg = path("bad.cfg");
  write(cfg, "colour=blue\n");
  EXPECT_EQ(run_cli({"reproduce", "table1", "--config", cfg}).code, 2);
}

TEST(ParseGrid, InclusiveWhenAligned) {
  EXPECT_EQ(parse_grid("10000:100000:10000").size(), 10u);
  EXPECT_EQ(parse_grid("100:100:100"), std::vector<std::size_t>{100});
  EXPECT_EQ(parse_grid("10:25:10"), (std::vector<std::size_t>{10, 20}));
  EXPECT_THROW(parse_grid("1:2"), UsageError);
}

TEST_F(Cli, FitNLogNOnPublishedTimes) {
  const auto in = path("t1.csv");
  write(in, std::string(fixtures::kTable1Csv));
  const auto plot = path("plot.csv");
  const auto r = run_cli({"fit", "--model", "nlogn", "--in", in, "--x", "n", "--y", "time", "--plot-out", plot});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("R^2: 0.9933"), std::string::npos) << r.out;
  EXPECT_EQ(Table::parse_text(slurp(plot)).rows(), 10u);
}

TEST_F(Cli, FitQuadraticOnPublishedTimes) {
  const auto in = path("t5.csv");
  write(in, std::string(fixtures::kTable5Csv));
  const auto r = run_cli({"fit", "--model", "poly:2", "--in", in, "--x", "p", "--y", "time"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("x^2: -0.0649"), std::string::npos) << r.out;
}

TEST_F(Cli, FitSelectOnExactQuadratic) {
  const auto in = path("q.csv");
  write(in, "x,y\n0,1\n1,2\n2,5\n3,10\n4,17\n5,26\n6,37\n");
  const auto r = run_cli({"fit", "--model", "select:4", "--in", in, "--x", "x", "--y", "y"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("chosen degree: 2"), std::string::npos) << r.out;
}

TEST_F(Cli, FitMissingColumn) {
  const auto in = path("q.csv");
  write(in, "x,y\n0,1\n1,2\n2,5\n");
  const auto r = run_cli({"fit", "--model", "nlogn", "--in", in, "--x", "size", "--y", "y"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("size"), std::string::npos);
  EXPECT_EQ(run_cli({"fit", "--model", "spline", "--in", in, "--x", "x", "--y", "y"}).code, 2);
}

TEST_F(Cli, AnovaOnFactorialCsv) {
  FactorialPlan plan;
  plan.n_levels = {100, 200, 300};
  plan.m_levels = {100, 1000, 1500};
  plan.p_levels = {0.2, 0.5, 0.8};
  plan.replicates = 3;
  const auto in = path("fact.csv");
  write_csv(in, run_factorial(plan));
  const auto csv = path("anova.csv");
  const auto r = run_cli({"anova", "--in", in, "--response", "comparisons", "--csv-out", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = Table::parse_text(slurp(csv));
  EXPECT_EQ(table.numeric("df"), (std::vector<double>{2, 2, 2, 4, 4, 4, 8, 54, 80}));
  EXPECT_NE(r.out.find("n*m*p"), std::string::npos);
}

TEST_F(Cli, Anova2CubedDegreesOfFreedom) {
  FactorialPlan plan;
  plan.n_levels = {100, 200};
  plan.m_levels = {10, 20};
  plan.p_levels = {0.3, 0.6};
  plan.replicates = 2;
  const auto in = path("fact.csv");
  write_csv(in, run_factorial(plan));
  const auto csv = path("anova.csv");
  ASSERT_EQ(run_cli({"anova", "--in", in, "--csv-out", csv}).code, 0);
  EXPECT_EQ(Table::parse_text(slurp(csv)).numeric("df"), (std::vector<double>{1, 1, 1, 1, 1, 1, 1, 8, 15}));
}

TEST_F(Cli, AnovaUnbalanced) {
  FactorialPlan plan;
  plan.n_levels = {100, 200};
  plan.m_levels = {10, 20};
  plan.p_levels = {0.3, 0.6};
  plan.replicates = 2;
  auto records = run_factorial(plan);
  records.erase(records.begin(), records.begin() + 2);  // drop one whole cell
  const auto in = path("fact.csv");
  write_csv(in, records);
  const auto r = run_cli({"anova", "--in", in});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("unbalanced"), std::string::npos);
  EXPECT_NE(r.err.find("(100, 10, 0.3): 0"), std::string::npos) << r.err;
}

TEST_F(Cli, ReproducePublishedTables) {
  for (const auto* target : {"table1", "table3", "table4", "table5"}) {
    const auto r = run_cli({"reproduce", target});
    EXPECT_EQ(r.code, 0) << target << "\n" << r.out;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
  }
  EXPECT_EQ(run_cli({"reproduce", "table9"}).code, 2);
}

TEST_F(Cli, ReproduceFreshFactorialSmall) {
  const auto cfg = path("small.cfg");
  write(cfg, "n_levels=2000,4000,6000\nm_levels=10,100,150\np_levels=0.2,0.5,0.8\nfactorial_reps=2\n");
  const auto r = run_cli({"reproduce", "fresh-factorial", "--config", cfg});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("main effect n"), std::string::npos);
}

}  // namespace
}  // namespace pslab::cli
