#ifdef DRPKIT_HAVE_CLI

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "drpkit/io/files.hpp"

namespace fs = std::filesystem;
using drpkit::cli::kExitOk;
using drpkit::cli::kExitRuntime;
using drpkit::cli::kExitUsage;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("drpkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "drpkit");
    return drpkit::cli::run(args);
  }
  std::string sub(const std::string& name) const { return (dir_ / name).string(); }
  fs::path put(const std::string& name, const std::string& content) {
    std::ofstream(dir_ / name) << content;
    return dir_ / name;
  }

  fs::path dir_;
};

std::string slurp(const fs::path& p) { return drpkit::io::read_file(p); }

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}), kExitUsage);
  EXPECT_EQ(run({"toy"}), kExitUsage);
  EXPECT_EQ(run({"toy", "--n-sims", "0", "--out", sub("a")}), kExitUsage);
  EXPECT_EQ(run({"toy", "--case", "weird", "--out", sub("a")}), kExitUsage);
  EXPECT_EQ(run({"toy", "--n-sims", "-3", "--out", sub("a")}), kExitUsage);
  EXPECT_EQ(run({"lensing", "--steps", "0", "--out", sub("b")}), kExitUsage);
  EXPECT_EQ(run({"lensing", "--sigma-min", "5", "--sigma-max", "1", "--out", sub("b")}), kExitUsage);
  EXPECT_EQ(run({"uninformative", "--u-max", "-1", "--out", sub("c")}), kExitUsage);
  EXPECT_EQ(run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(run({"--version"}), kExitOk);
}

TEST_F(Cli, ToyWritesCurvesAndConfig) {
  ASSERT_EQ(run({"toy", "--n-sims", "50", "--n-post", "40", "--dim", "3", "--seed", "5", "--svg",
                 "--out", sub("toy")}),
            kExitOk);
  const auto drp = drpkit::io::read_coverage_csv(dir_ / "toy" / "drp.csv");
  const auto hpd = drpkit::io::read_coverage_csv(dir_ / "toy" / "hpd.csv");
  EXPECT_EQ(drp.credibility.size(), 101u);
  EXPECT_EQ(hpd.meta.at("method"), "hpd");
  EXPECT_EQ(drp.meta.at("n_post"), "40");
  const auto svg = slurp(dir_ / "toy" / "coverage.svg");
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  const auto cfg = drpkit::io::read_config(dir_ / "toy" / "resolved_config.txt");
  bool saw_seed = false;
  for (const auto& [k, v] : cfg)
    if (k == "seed") saw_seed = v == "5";
  EXPECT_TRUE(saw_seed);
}

TEST_F(Cli, ConfigReloadReproducesRun) {
  ASSERT_EQ(run({"toy", "--n-sims", "30", "--n-post", "20", "--dim", "2", "--seed", "8", "--case", "over",
                 "--out", sub("a")}),
            kExitOk);
  ASSERT_EQ(run({"toy", "--config", sub("a/resolved_config.txt"), "--out", sub("b")}), kExitOk);
  EXPECT_EQ(slurp(dir_ / "a" / "drp.csv"), slurp(dir_ / "b" / "drp.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "hpd.csv"), slurp(dir_ / "b" / "hpd.csv"));
}

TEST_F(Cli, DeterministicAcrossRuns) {
  for (const char* d : {"a", "b"}) {
    ASSERT_EQ(run({"uninformative", "--n-sims", "40", "--n-post", "30", "--seed", "2", "--out", sub(d)}),
              kExitOk);
  }
  for (const char* f : {"hpd.csv", "drp-prior.csv", "drp-datashift.csv"}) {
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(Cli, DumpReplaysThroughCoverage) {
  ASSERT_EQ(run({"toy", "--n-sims", "25", "--n-post", "15", "--dim", "2", "--seed", "4", "--methods", "drp",
                 "--dump", "--out", sub("toy")}),
            kExitOk);
  ASSERT_EQ(run({"coverage", "--joint", sub("toy/joint.csv"), "--posterior", sub("toy/posterior.csv"),
                 "--bounds", sub("toy/bounds.txt"), "--seed", "4", "--out", sub("cov")}),
            kExitOk);
  EXPECT_EQ(slurp(dir_ / "toy" / "drp.csv"), slurp(dir_ / "cov" / "drp.csv"));
}

TEST_F(Cli, CoverageErrors) {
  put("joint.csv", "sim_id,theta_0\n0,0.1\n1,0.7\n");
  put("post.csv", "sim_id,sample_id,theta_0\n0,0,0.2\n0,1,0.4\n");
  EXPECT_EQ(run({"coverage", "--joint", sub("joint.csv"), "--posterior", sub("post.csv"), "--out",
                 sub("o")}),
            kExitRuntime);
  put("post2.csv", "sim_id,sample_id,theta_0\n0,0,0.2\n1,0,0.4\n");
  put("w0.txt", "0\n");
  EXPECT_EQ(run({"coverage", "--joint", sub("joint.csv"), "--posterior", sub("post2.csv"), "--metric",
                 "weighted:" + sub("w0.txt"), "--out", sub("o")}),
            kExitUsage);
  put("w2.txt", "1,2\n");
  EXPECT_EQ(run({"coverage", "--joint", sub("joint.csv"), "--posterior", sub("post2.csv"), "--metric",
                 "weighted:" + sub("w2.txt"), "--out", sub("o")}),
            kExitUsage);
  EXPECT_EQ(run({"coverage", "--joint", sub("joint.csv"), "--posterior", sub("post2.csv"), "--ref-policy",
                 "datashift:0,1", "--out", sub("o")}),
            kExitUsage);
  EXPECT_EQ(run({"coverage", "--joint", sub("joint.csv"), "--posterior", sub("post2.csv"), "--ref-policy",
                 "sideways", "--out", sub("o")}),
            kExitUsage);
  EXPECT_EQ(run({"coverage", "--joint", sub("nope.csv"), "--posterior", sub("post2.csv"), "--out",
                 sub("o")}),
            kExitRuntime);
  EXPECT_EQ(run({"coverage", "--joint", sub("joint.csv"), "--posterior", sub("post2.csv"), "--out",
                 sub("o")}),
            kExitOk);
}

TEST_F(Cli, SinglePosteriorSampleGivesStepCurve) {
  ASSERT_EQ(run({"toy", "--n-sims", "60", "--n-post", "1", "--dim", "2", "--out", sub("t")}), kExitOk);
  for (const char* f : {"drp.csv", "hpd.csv"}) {
    const auto t = drpkit::io::read_coverage_csv(dir_ / "t" / f);
    EXPECT_EQ(t.ecp[0], 0.0);
    for (std::size_t k = 2; k < t.ecp.size(); ++k) EXPECT_EQ(t.ecp[k], t.ecp[1]) << f;
  }
}

TEST_F(Cli, PlotOverlays) {
  ASSERT_EQ(run({"uninformative", "--n-sims", "30", "--n-post", "20", "--out", sub("u")}), kExitOk);
  ASSERT_EQ(run({"plot", "--in", sub("u/hpd.csv"), "--out", sub("one.svg")}), kExitOk);
  EXPECT_EQ(count(slurp(dir_ / "one.svg"), "<polyline"), 1u);
  ASSERT_EQ(run({"plot", "--in", sub("u/hpd.csv") + "," + sub("u/drp-prior.csv") + "," +
                                     sub("u/drp-datashift.csv"),
                 "--title", "three", "--out", sub("three.svg")}),
            kExitOk);
  const auto svg = slurp(dir_ / "three.svg");
  EXPECT_EQ(count(svg, "<polyline"), 3u);
  EXPECT_EQ(count(svg, "class=\"legend-entry\""), 3u);
  put("empty.csv", "credibility,alpha,ecp,band_lo,band_hi\n");
  EXPECT_EQ(run({"plot", "--in", sub("empty.csv"), "--out", sub("bad.svg")}), kExitRuntime);
  EXPECT_FALSE(fs::exists(dir_ / "bad.svg"));
}

TEST_F(Cli, LensingSmallRun) {
  ASSERT_EQ(run({"lensing", "--n-sims", "6", "--n-post", "10", "--steps", "40", "--estimator", "biased",
                 "--n-summary", "2", "--out", sub("l")}),
            kExitOk);
  const auto t = drpkit::io::read_coverage_csv(dir_ / "l" / "drp.csv");
  EXPECT_EQ(t.meta.at("n_sims"), "6");
  const auto summary = slurp(dir_ / "l" / "summary.csv");
  EXPECT_EQ(summary.rfind("sim_id,pixel,row,col,truth,mean,std,residual\n", 0), 0u);
  EXPECT_EQ(count(summary, "\n"), 1u + 2u * 64u);
}

#endif
