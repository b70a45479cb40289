#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "prefdist/cli.hpp"

using namespace prefdist;
namespace fs = std::filesystem;

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("prefdist_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const std::vector<std::string> kFast{"--grid-max", "6", "--grid-step", "0.5", "--outer", "20",
                                     "--inner", "100", "--walk-steps", "100"};

std::vector<std::string> fast(std::vector<std::string> tail) {
  auto v = kFast;
  v.insert(v.end(), tail.begin(), tail.end());
  return v;
}
}  // namespace

TEST_SUITE("cli") {
TEST_CASE("synth, matrix and cluster pipeline") {
  const auto dir = scratch("pipeline");
  const auto answers = (dir / "a.csv").string();
  auto r = run(fast({"--seed", "3", "synth", "--count", "3", "--family", "power:0.5", "--battery", "1/5,0/6,2/6",
                     "--out", answers, "--truth", (dir / "t.csv").string()}));
  REQUIRE(r.code == 0);
  CHECK(slurp(answers).rfind("# seed=3\n", 0) == 0);

  const auto matrix = (dir / "m.csv").string();
  r = run(fast({"--seed", "3", "matrix", answers, "--out", matrix, "--export-constraints", (dir / "c").string()}));
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "m_se.csv"));
  CHECK(fs::exists(dir / "m_self.csv"));
  CHECK(fs::exists(dir / "c" / "S1.json"));
  CHECK(r.err.find("S2: kept") != std::string::npos);
  const std::string first = slurp(matrix);

  r = run(fast({"--seed", "3", "--serial", "matrix", answers, "--out", matrix}));
  REQUIRE(r.code == 0);
  CHECK(slurp(matrix) == first);

  r = run({"cluster", matrix, "--out", (dir / "tree").string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "tree.nwk"));
  CHECK(r.out.find("S3") != std::string::npos);

  r = run(fast({"--seed", "1", "sample", (dir / "c" / "S1.json").string(), "--count", "5"}));
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
}

TEST_CASE("distance between two files, one vacuous") {
  const auto dir = scratch("distance");
  {
    std::ofstream a(dir / "a.csv");
    a << "subject_id,m,n,prob,ce\nA,0,6,0.5,3\n";
    std::ofstream b(dir / "b.csv");
  }
  const auto r = run(fast({"distance", (dir / "a.csv").string(), (dir / "b.csv").string()}));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("distance: ") != std::string::npos);
  CHECK(r.out.find("b: kept 0/0") != std::string::npos);
  CHECK(r.err.find("generated seed") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags override") {
  const auto dir = scratch("config");
  {
    std::ofstream c(dir / "run.toml");
    c << "seed=5\ngrid-max=6\ngrid-step=0.5\n";
  }
  const auto out = (dir / "s.csv").string();
  auto r = run({"--config", (dir / "run.toml").string(), "synth", "--count", "1", "--out", out});
  REQUIRE(r.code == 0);
  CHECK(slurp(out).rfind("# seed=5\n", 0) == 0);
  r = run({"--config", (dir / "run.toml").string(), "--seed", "6", "synth", "--count", "1", "--out", out});
  REQUIRE(r.code == 0);
  CHECK(slurp(out).rfind("# seed=6\n", 0) == 0);
}

TEST_CASE("exit codes") {
  const auto dir = scratch("codes");
  CHECK(run({"bogus"}).code == kExitParse);
  CHECK(run({"--outer", "x", "synth"}).code == kExitParse);
  {
    std::ofstream bad(dir / "bad.csv");
    bad << "subject_id,m,n,prob,ce\nA,0,6,0.5,zz\n";
    std::ofstream one(dir / "one.csv");
    one << "subject_id,m,n,prob,ce\nA,0,6,0.5,3\n";
    std::ofstream m(dir / "m.csv");
    m << ",a\na,0\n";
  }
  CHECK(run(fast({"--seed", "1", "matrix", (dir / "bad.csv").string()})).code == kExitParse);
  CHECK(run(fast({"--seed", "1", "matrix", (dir / "one.csv").string()})).code == kExitTooFewSubjects);
  CHECK(run({"cluster", (dir / "m.csv").string()}).code == kExitTooFewSubjects);
  CHECK(run({"--seed", "1", "synth", "--family", "power:-2"}).code == kExitParse);
}
}
