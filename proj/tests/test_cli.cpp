#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support/oracles.hpp"

using namespace roundpack;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "roundpack");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("roundpack_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (dir / name).string(); }

  fs::path dir;
};

}  // namespace

TEST_F(Cli, Figure1OracleSap) {
  const auto inst = write("fig1.txt", format_instance(oracle::figure1()));
  const Outcome r = run({"solve", inst, "--algo=oracle", "--problem=sap"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rounds=2\n"), std::string::npos);
  EXPECT_EQ(r.out.rfind("rounds=", 0), 0u);
}

TEST_F(Cli, EmptyInstance) {
  const auto inst = write("empty.txt", "3\n1 2 3\n0\n");
  for (const char* algo : {"general", "oracle", "unit"}) {
    const Outcome r = run({"solve", inst, std::string("--algo=") + algo});
    EXPECT_EQ(r.code, 0) << algo << ": " << r.err;
    EXPECT_NE(r.out.find("rounds=0\n"), std::string::npos);
  }
}

TEST_F(Cli, NbaOnNonNbaIsPrecondition) {
  const auto inst = write("bad.txt", "2\n2 8\n1\n1 2 5\n");
  const Outcome r = run({"solve", inst, "--algo=nba"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("precondition"), std::string::npos);
}

TEST_F(Cli, ParseAndUsageErrors) {
  EXPECT_EQ(run({"solve", write("junk.txt", "2\n1\n")}).code, 2);
  EXPECT_EQ(run({"solve", file("missing.txt")}).code, 2);
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"solve", write("ok.txt", "1\n3\n0\n"), "--algo=magic"}).code, 2);
  EXPECT_EQ(run({"solve", write("ok2.txt", "1\n3\n0\n"), "--problem=xyz"}).code, 2);
}

TEST_F(Cli, VerifyOutcomes) {
  const auto inst = write("fig1.txt", format_instance(oracle::figure1()));
  std::string one = "UFP\n1\n";
  for (int j = 0; j < 7; ++j) one += std::to_string(j) + " 0\n";
  const Outcome ok = run({"verify", inst, write("one.txt", one)});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "valid\n");

  const auto over = write("over.txt", "1\n1\n2\n0 1 1\n0 1 1\n");
  const Outcome bad = run({"verify", over, write("p.txt", "UFP\n1\n0 0\n1 0\n")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("invalid: ", 0), 0u);

  const Outcome missing = run({"verify", over, write("q.txt", "UFP\n1\n0 0\n")});
  EXPECT_EQ(missing.code, 1);
}

TEST_F(Cli, SolveVerifyRoundTrip) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::vector<std::vector<std::string>> gens{
        {"--n=6", "--m=5", "--cmin=2", "--cmax=6", "--dmax=3"},
        {"--n=20", "--m=8", "--cmin=6", "--cmax=6", "--dmax=6", "--uniform"},
        {"--n=25", "--m=10", "--cmin=4", "--cmax=40", "--dmax=4", "--nba"},
        {"--n=15", "--m=6", "--cmin=1", "--cmax=4", "--dmax=1"}};
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto inst = file("i" + std::to_string(g) + ".txt");
      std::vector<std::string> args{"generate", "--kind=random", "--seed=" + std::to_string(seed), "--out=" + inst};
      args.insert(args.end(), gens[g].begin(), gens[g].end());
      ASSERT_EQ(run(args).code, 0);
      for (const char* algo : {"uniform", "nba", "general", "unit", "oracle"})
        for (const char* prob : {"ufp", "sap"}) {
          const auto pack = file("p.txt");
          const Outcome s = run({"solve", inst, std::string("--algo=") + algo, std::string("--problem=") + prob, "--out=" + pack});
          if (s.code == 3) continue;
          ASSERT_EQ(s.code, 0) << algo << " " << prob << ": " << s.err;
          const Outcome v = run({"verify", inst, pack});
          ASSERT_EQ(v.code, 0) << algo << " " << prob << ": " << v.out;
        }
    }
  }
}

TEST_F(Cli, ReportFile) {
  const auto inst = write("fig1.txt", format_instance(oracle::figure1()));
  const auto rep = file("rep.txt");
  const Outcome r = run({"solve", inst, "--report=" + rep});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(slurp(rep), r.out);
}

TEST_F(Cli, TreeRoundTrip) {
  const auto inst = file("t.txt");
  ASSERT_EQ(run({"generate", "--kind=tree", "--seed=4", "--vertices=15", "--n=30", "--cmin=4", "--cmax=30", "--dmax=30", "--nba", "--out=" + inst}).code, 0);
  const auto pack = file("tp.txt");
  const Outcome s = run({"solve", inst, "--algo=tree", "--out=" + pack});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(run({"verify", inst, pack, "--tree"}).code, 0);
  EXPECT_EQ(run({"solve", inst, "--algo=tree", "--problem=sap"}).code, 3);
}

TEST_F(Cli, GenerateGadget) {
  const auto out = file("g.txt");
  ASSERT_EQ(run({"generate", "--kind=gadget", "--q=1", "--out=" + out}).code, 0);
  const Instance inst = parse_instance(slurp(out));
  EXPECT_EQ(inst.n(), 10 + 1);
  EXPECT_TRUE(fs::exists(out + ".roles"));
  EXPECT_EQ(run({"generate", "--kind=gadget", "--q=17"}).code, 2);
}

TEST_F(Cli, GenerateRandomDeterministic) {
  const Outcome a = run({"generate", "--seed=9", "--n=12"});
  const Outcome b = run({"generate", "--seed=9", "--n=12"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"generate", "--seed=10", "--n=12"}).out);
  EXPECT_EQ(parse_instance(run({"generate", "--n=0"}).out).n(), 0);
}

TEST_F(Cli, BenchOneInstance) {
  fs::create_directories(dir / "corpus");
  write("corpus/fig1.txt", format_instance(oracle::figure1()));
  const Outcome r = run({"bench", file("corpus"), "--algos=general", "--problems=ufp"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, cli::kBenchHeader);
  EXPECT_EQ(row.rfind("fig1.txt,general,ufp,7,12,5,1,", 0), 0u) << row;
  EXPECT_FALSE(std::getline(in, extra));
}

TEST_F(Cli, BenchDeterministicAcrossRunsAndThreads) {
  fs::create_directories(dir / "corpus");
  for (std::uint64_t seed = 0; seed < 6; ++seed)
    write("corpus/r" + std::to_string(seed) + ".txt",
          format_instance(random_instance({.n = 8, .m = 6, .cmin = 2, .cmax = 6, .dmax = 2, .nba = seed % 2 == 0}, seed)));
  const Outcome a = run({"bench", file("corpus")});
  const Outcome b = run({"bench", file("corpus"), "--jobs=4"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("INVALID"), std::string::npos);
  const auto csv = file("b.csv");
  ASSERT_EQ(run({"bench", file("corpus"), "--out=" + csv}).code, 0);
  EXPECT_EQ(slurp(csv), a.out);
}

TEST_F(Cli, BenchMissingDirectory) { EXPECT_EQ(run({"bench", file("nope")}).code, 2); }

TEST_F(Cli, GuardsFromEnvironment) {
  const auto inst = write("fig1.txt", format_instance(oracle::figure1()));
  ::setenv("ROUNDPACK_GUARDS", "exact_ufp_n=3", 1);
  const Outcome r = run({"solve", inst, "--algo=oracle"});
  ::unsetenv("ROUNDPACK_GUARDS");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(run({"solve", inst, "--algo=oracle"}).code, 0);
}

#ifdef ROUNDPACK_CLI_PATH
TEST_F(Cli, BinaryExitCodes) {
  const auto bad = write("bad.txt", "2\n2 8\n1\n1 2 5\n");
  const std::string quiet = " >/dev/null 2>&1";
  int st = std::system((std::string(ROUNDPACK_CLI_PATH) + " solve --algo=nba " + bad + quiet).c_str());
  EXPECT_EQ(WEXITSTATUS(st), 3);
  st = std::system((std::string(ROUNDPACK_CLI_PATH) + " solve " + bad + quiet).c_str());
  EXPECT_EQ(WEXITSTATUS(st), 0);
  st = std::system((std::string(ROUNDPACK_CLI_PATH) + " bench " + file("nope") + quiet).c_str());
  EXPECT_EQ(WEXITSTATUS(st), 2);
}
#endif
