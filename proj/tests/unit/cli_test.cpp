#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = PCT_CLI;
const std::string kIris = PCT_DATA_DIR "/iris.csv";
const std::string kFixtures = PCT_FIXTURE_DIR;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pct-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  /// Runs the CLI with `args`; stdout and stderr land in out_ and err_.
  int run(const std::string& args) {
    const std::string cmd = "\"" + kCli + "\" " + args + " > \"" + path("stdout") + "\" 2> \"" + path("stderr") + "\"";
    const int status = std::system(cmd.c_str());
    out_ = read(path("stdout"));
    err_ = read(path("stderr"));
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string read(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::string out_;
  std::string err_;
};

TEST_F(Cli, TrainWritesTreeAndSummary) {
  ASSERT_EQ(run("--data " + kIris + " --class species --alpha 0.01 train --out " + path("t.json")), 0) << err_;
  EXPECT_NE(out_.find("nodes "), std::string::npos);
  EXPECT_NE(read(path("t.json")).find("\"pct-tree/1\""), std::string::npos);
}

TEST_F(Cli, MissingDataFileIsDataError) {
  const std::string missing = path("nope.csv");
  EXPECT_EQ(run("--data " + missing + " train"), 2);
  EXPECT_NE(err_.find(missing), std::string::npos);
}

TEST_F(Cli, ConfigErrors) {
  EXPECT_EQ(run("--data " + kIris + " --class species xval --k 1"), 1);
  EXPECT_EQ(run("--data " + kIris + " --class species xval --k 151"), 1);
  EXPECT_EQ(run("--data " + kIris + " --bogus train"), 1);
  EXPECT_EQ(run("--data " + kIris + " --class nosuch train"), 1);
  EXPECT_EQ(run("--data " + kIris + " --norm sideways train"), 1);
}

TEST_F(Cli, MalformedInputIsDataError) {
  std::ofstream(path("bad.csv")) << "a,b\n1\n";
  EXPECT_EQ(run("--data " + path("bad.csv") + " train"), 2);
  std::ofstream(path("bad.pl")) << "begin(model(a)).\np(1\nend(model(a)).\n";
  EXPECT_EQ(run("--interpretations " + path("bad.pl") + " train"), 2);
}

TEST_F(Cli, LeaveOneOutFolds) {
  std::ifstream in(kIris);
  std::ofstream small(path("small.csv"));
  std::string line;
  for (int i = 0; i < 47 && std::getline(in, line); ++i) small << line << "\n";
  small.close();
  ASSERT_EQ(run("--data " + path("small.csv") + " --class species xval --k 0 --emit structured"), 0) << err_;
  EXPECT_NE(out_.find("\"folds\": 46"), std::string::npos) << out_.substr(0, 200);
}

TEST_F(Cli, XvalReportsAccuracyAndSize) {
  ASSERT_EQ(run("--data " + kIris + " --class species --score weighted_between_ss xval --k 10 --out " + path("r")), 0)
      << err_;
  const std::string json = read(path("r.json"));
  EXPECT_NE(json.find("\"accuracy\""), std::string::npos);
  EXPECT_NE(json.find("\"mean_nodes\""), std::string::npos);
  EXPECT_FALSE(read(path("r.txt")).empty());
}

TEST_F(Cli, RelationalTrainPredictPrune) {
  const std::string data = " --interpretations " + kFixtures + "/molecules.pl --mapping " + kFixtures +
                           "/molecules.map";
  ASSERT_EQ(run(data + " --templates " + kFixtures + "/molecules.tmpl --dims logmutag --alpha 0.05 --prune off" +
                " train --out " + path("m.json")),
            0)
      << err_;
  EXPECT_NE(out_.find("atom("), std::string::npos);
  ASSERT_EQ(run(data + " predict --tree " + path("m.json") + " --out " + path("p.csv")), 0) << err_;
  EXPECT_NE(err_.find("accuracy 1"), std::string::npos) << err_;
  ASSERT_EQ(run(data + " --mode supervised prune --tree " + path("m.json") + " --out " + path("q.json")), 0) << err_;
  EXPECT_NE(out_.find("measure classification"), std::string::npos);
}

TEST_F(Cli, ConfigFile) {
  std::ofstream(path("run.ini")) << "data=" << kIris << "\nclass=species\nscore=weighted_between_ss\nseed=3\n";
  ASSERT_EQ(run("--config " + path("run.ini") + " train --out " + path("a.json")), 0) << err_;
  ASSERT_EQ(run("--data " + kIris + " --class species --score weighted_between_ss --seed 3 train --out " +
                path("b.json")),
            0);
  EXPECT_EQ(read(path("a.json")), read(path("b.json")));
}

TEST_F(Cli, Experiments) {
  ASSERT_EQ(run("--data " + kIris + " --class species experiment pruning_sweep --fractions 0.1,0.3 --emit structured"), 0)
      << err_;
  EXPECT_NE(out_.find("0.3"), std::string::npos);
  ASSERT_EQ(run("experiment missing_info --surrogate 80 --levels 1,0.5,0.25,0.1"), 0) << err_;
  EXPECT_NE(out_.find("10%"), std::string::npos);
  EXPECT_NE(out_.find("three-attr"), std::string::npos);
  EXPECT_EQ(run("--data " + kIris + " experiment nosuch"), 1);
}

}  // namespace
