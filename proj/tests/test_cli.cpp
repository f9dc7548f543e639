#include "cli.hpp"
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace elcomm;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "elcomm_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

// Exit status of the installed tool run in a separate process.
int spawn(const std::string& args) {
  int status = std::system((std::string(ELCOMM_TOOL) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("membership decisions") {
  auto r = run({"member", "--ring", "free(Z;a:A,b:B,c:C)", "--ideal", "(A o B) o C", "--poly", "b c a"});
  CHECK(r.code == cli::Ok);
  CHECK(r.out.rfind("NOT MEMBER", 0) == 0);
  r = run({"member", "--ring", "free(Z;a:A,b:B,c:C)", "--ideal", "(A o B) o C", "--poly", "c b a"});
  CHECK(r.code == cli::Ok);
  CHECK(r.out.rfind("MEMBER", 0) == 0);
  CHECK(r.out.find("c:C") != std::string::npos);
}

TEST_CASE("verification suites") {
  for (const char* suite : {"y-explicit", "lemma5-table", "lemma6-table", "steinberg-rules", "identities-sec2",
                            "matrix-identities"}) {
    CAPTURE(suite);
    auto r = run({"verify", "--suite", suite, "--n", "3"});
    CHECK(r.code == cli::Ok);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
  }
  auto y = run({"verify", "--suite", "y-explicit", "--n", "3"});
  CHECK(y.out.find("1+a*b+a*b*a*b, -a*b*a") != std::string::npos);
}

TEST_CASE("certificates round-trip through a fresh process") {
  for (const char* lemma : {"9", "10", "11", "12", "7", "8", "z", "comaximal"}) {
    CAPTURE(lemma);
    auto path = scratch(std::string("cert_") + lemma + ".txt").string();
    auto r = run({"certify", "--lemma", lemma, "--out", path});
    CHECK(r.code == cli::Ok);
    CHECK(spawn("check --in " + path) == 0);
  }
  auto path = scratch("tampered.txt").string();
  REQUIRE(run({"certify", "--lemma", "7", "--out", path}).code == cli::Ok);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  auto s = text.str();
  s.replace(s.find("a*b*c"), 5, "a*c*b");
  std::ofstream(path) << s;
  CHECK(spawn("check --in " + path) == 1);
}

TEST_CASE("theorem reports re-check from file") {
  auto path = scratch("report.txt").string();
  auto r = run({"theorem1", "--tree", "[[A,B],[C,D]]", "--n", "4", "--out", path});
  CHECK(r.code == cli::Ok);
  CHECK(r.out.find("PASS theorem1 [[A,B],[C,D]]: quadruple into [E(4,AoB),E(4,CoD)]") != std::string::npos);
  auto c = run({"check", "--in", path, "--jobs", "2"});
  CHECK(c.code == cli::Ok);
  CHECK(c.out.find("#12") != std::string::npos);
  CHECK(c.out.find("FAIL") == std::string::npos);
}

TEST_CASE("identical arguments give identical output") {
  std::vector<std::vector<std::string>> commands{
      {"theorem1", "--tree", "[[[A,B],C],D]", "--n", "4", "--jobs", "3"},
      {"oracle", "--ring", "Z/8", "--task", "shadow", "--identity", "table-y-t", "--tag", "A=2", "--seed", "42"},
      {"certify", "--lemma", "8"},
  };
  for (const auto& cmd : commands) {
    auto first = run(cmd), second = run(cmd);
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("oracle tasks") {
  auto r = run({"oracle", "--ring", "Z/4", "--task", "closure", "--n", "3", "--group", "E(R,2)"});
  CHECK(r.code == cli::Ok);
  CHECK(r.out.find("size 256") != std::string::npos);
  r = run({"oracle", "--ring", "Z/4", "--task", "centrality", "--group", "[E(2),E(2)]"});
  CHECK(r.code == cli::Ok);
  r = run({"oracle", "--ring", "Z/4", "--task", "centrality", "--group", "E(2)"});
  CHECK(r.code == cli::CheckFailed);
}

TEST_CASE("exit statuses") {
  CHECK(run({"frobnicate"}).code == cli::Usage);
  CHECK(run({"verify", "--suite", "y-explicit", "--unknown-flag"}).code == cli::Usage);
  CHECK(run({"member", "--ring", "free(Z;a:A)", "--ideal", "A o", "--poly", "a"}).code == cli::Usage);
  CHECK(run({"certify", "--lemma", "8", "--n", "3"}).code == cli::Unsupported);
  auto exp = run({"certify", "--lemma", "8", "--n", "3", "--experimental-n3"});
  CHECK(exp.code == cli::Unsupported);
  CHECK(exp.out.find("no position is disjoint") != std::string::npos);
  CHECK(run({"theorem1", "--tree", "[[A,B],[C,D]]", "--n", "3"}).code == cli::Unsupported);
  CHECK(run({"oracle", "--ring", "Z/4", "--task", "closure", "--group", "E(1)", "--cap", "100"}).code ==
        cli::CapReached);
  CHECK(run({"theorem1", "--tree", "[[A,B],[C,D]]", "--leaf-cap", "3"}).code == cli::CapReached);
  CHECK(run({"oracle", "--ring", "Z/4", "--task", "shadow"}).code == cli::Usage);
  CHECK(run({"--help"}).code == cli::Ok);
}
