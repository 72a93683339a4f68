// End-to-end checks of the command-line tool via the built binary.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int status = -1;
  std::string output;
};

CmdResult run_cmd(const std::string& args) {
  const char* bin = std::getenv("EDGESIM_BIN");
  REQUIRE(bin != nullptr);
  const std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  while (fgets(buf, sizeof(buf), pipe)) r.output += buf;
  const int rc = pclose(pipe);
  r.status = WEXITSTATUS(rc);
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("edgesim-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("gen is deterministic and echoes digests") {
  TempDir dir;
  const std::string flags = "gen --models 10 --table1-ranges --slots 50 --zipf 1.0 "
                            "--total-rate 5 --seed 7 --scenario " +
                            (dir.path / "s.json").string() + " --trace " +
                            (dir.path / "t.json").string();
  const CmdResult a = run_cmd(flags);
  CHECK(a.status == 0);
  CHECK(a.output.find("digest") != std::string::npos);
  const std::string s1 = slurp(dir.path / "s.json");
  const CmdResult b = run_cmd(flags);
  CHECK(b.status == 0);
  CHECK(a.output == b.output);
  CHECK(slurp(dir.path / "s.json") == s1);
}

TEST_CASE("gen with zero models is a usage-level failure") {
  const CmdResult r = run_cmd("gen --models 0");
  CHECK(r.status == 3);
  CHECK(r.output.find("models") != std::string::npos);
}

TEST_CASE("unknown flags exit with usage status 2") {
  const CmdResult r = run_cmd("gen --no-such-flag");
  CHECK(r.status == 2);
}

TEST_CASE("run compares policies and writes artifacts") {
  TempDir dir;
  const std::string s = (dir.path / "s.json").string();
  const std::string t = (dir.path / "t.json").string();
  REQUIRE(run_cmd("gen --models 8 --slots 30 --seed 3 --scenario " + s + " --trace " + t)
              .status == 0);
  const CmdResult r =
      run_cmd("run --scenario " + s + " --trace " + t +
              " --policies ga,lru,lfu,fifo,rand --storage 120 --gpu 12 --seed 5 --csv " +
              (dir.path / "slots.csv").string() + " --json " +
              (dir.path / "summary.json").string());
  CHECK(r.status == 0);
  CHECK(r.output.find("ga") != std::string::npos);
  CHECK(fs::exists(dir.path / "slots.csv"));
  CHECK(fs::exists(dir.path / "summary.json"));
  const std::string csv = slurp(dir.path / "slots.csv");
  CHECK(csv.rfind("slot,policy,decision_bits", 0) == 0);
}

TEST_CASE("brute policy on a large catalog hits the oracle guard") {
  TempDir dir;
  const std::string s = (dir.path / "s.json").string();
  const std::string t = (dir.path / "t.json").string();
  REQUIRE(run_cmd("gen --models 25 --slots 5 --seed 3 --scenario " + s + " --trace " + t)
              .status == 0);
  const CmdResult r = run_cmd("run --scenario " + s + " --trace " + t + " --policies brute");
  CHECK(r.status == 4);
  CHECK(r.output.find("M <= 20") != std::string::npos);
}

TEST_CASE("missing scenario file reports a validation-level error") {
  const CmdResult r = run_cmd("run --scenario /nonexistent.json --trace /nonexistent.json");
  CHECK(r.status == 3);
}

TEST_CASE("sweep writes per-run and aggregated CSVs") {
  TempDir dir;
  const std::string s = (dir.path / "s.json").string();
  const std::string t = (dir.path / "t.json").string();
  REQUIRE(run_cmd("gen --models 6 --slots 20 --seed 3 --scenario " + s + " --trace " + t)
              .status == 0);
  const CmdResult r = run_cmd(
      "sweep --scenario " + s +
      " --axis storage_gb --values 60,120 --repeats 2 --slots 20 --policies ga,lru --seed 9 "
      "--ga-gens 40 --csv " +
      (dir.path / "sweep.csv").string() + " --agg " + (dir.path / "agg.csv").string());
  CHECK(r.status == 0);
  const std::string rows = slurp(dir.path / "sweep.csv");
  CHECK(rows.rfind("axis,policy,seed,avg_cost,miss_rate,avg_service_delay_s\n", 0) == 0);
  // 2 axis points x 2 policies x 2 repeats
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 9);
  const std::string agg = slurp(dir.path / "agg.csv");
  CHECK(agg.rfind("axis,policy,mean_avg_cost,stddev_avg_cost,n\n", 0) == 0);
}

TEST_CASE("oracle-gap reports a gap distribution") {
  const CmdResult r =
      run_cmd("oracle-gap --models 6 --contexts 10 --seed 4 --ga-gens 60");
  CHECK(r.status == 0);
  CHECK(r.output.find("ga below oracle     0") != std::string::npos);
}

TEST_CASE("oracle-gap with zero weights is trivially tight") {
  const CmdResult r = run_cmd(
      "oracle-gap --models 5 --contexts 5 --seed 4 --mu-l 0 --mu-r 0 --ga-gens 20");
  CHECK(r.status == 0);
  CHECK(r.output.find("(100%)") != std::string::npos);
}
