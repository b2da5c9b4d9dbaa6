#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

using dynslice::cli::run_cli;
using dynslice::testing::fixture_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args, dynslice::cli::Terminal term = {}) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err, term);
  return {code, out.str(), err.str()};
}

const std::string kSample = fixture_path("sample.moo");

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("dynslice_cli_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("slice an object") {
  Result r = cli({"slice", kSample, "--inputs", "1,2,3,4", "--object", "T1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("slice T1 = {2,4,5,17,18}\n", 0) == 0);
  CHECK(r.out.find(">   #2: cin >> p;") != std::string::npos);
  CHECK(r.out.find(">     #17: a = x;") != std::string::npos);
  CHECK(r.out.find("    #3: cout") != std::string::npos);
}

TEST_CASE("labels outside the slice are dimmed on a terminal") {
  Result r = cli({"slice", kSample, "--inputs", "1,2,3,4", "--criterion", "4:q"}, {true});
  CHECK(r.code == 0);
  CHECK(r.out.find("\x1b[2m#3:\x1b[0m") != std::string::npos);
  CHECK(r.out.find(">   #4: cin >> q;") != std::string::npos);
}

TEST_CASE("slice a criterion as JSON") {
  Result r = cli({"slice", kSample, "--inputs", "1,2,3,4", "--criterion", "4:q", "--json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["slice"] == nlohmann::json({4}));
  CHECK(j["executed"] == true);
  CHECK(j["criterion"]["node"] == 4);
  CHECK(j["criterion"]["var"] == "q");
  CHECK(j["stats"]["events"].get<int>() > 0);
  // Stable output with sorted keys.
  CHECK(r.out.find("\"criterion\"") < r.out.find("\"executed\""));
  CHECK(r.out.find("\"executed\"") < r.out.find("\"slice\""));
  CHECK(r.out == cli({"slice", kSample, "--inputs", "1,2,3,4", "--criterion", "4:q", "--json"}).out);

  Result obj = cli({"slice", kSample, "--inputs", "1,2,3,4", "--object", "T4", "--json"});
  CHECK(nlohmann::json::parse(obj.out)["slice"] ==
        nlohmann::json({2, 4, 5, 8, 10, 11, 13, 15, 17, 18, 21, 22, 23, 24}));
}

TEST_CASE("exit codes") {
  SUBCASE("criterion never executed") {
    Result r = cli({"slice", kSample, "--inputs", "1,2,3,4", "--criterion", "99:x"});
    CHECK(r.code == 4);
    Result j = cli({"slice", kSample, "--inputs", "1,2,3,4", "--criterion", "99:x", "--json"});
    CHECK(j.code == 4);
    CHECK(nlohmann::json::parse(j.out)["executed"] == false);
  }
  SUBCASE("unknown object") {
    CHECK(cli({"slice", kSample, "--inputs", "1,2,3,4", "--object", "T9"}).code == 4);
  }
  SUBCASE("parse error") {
    auto bad = temp_file("bad.moo", "void main() { int p; p = ; }");
    Result r = cli({"slice", bad.string(), "--criterion", "1:p"});
    CHECK(r.code == 2);
    CHECK(r.err.find("1:") != std::string::npos);
    CHECK(cli({"cdg", bad.string()}).code == 2);
  }
  SUBCASE("runtime error") {
    Result r = cli({"slice", kSample, "--inputs", "1,2", "--criterion", "2:p"});
    CHECK(r.code == 3);
    CHECK(r.err.find("input exhausted") != std::string::npos);
    CHECK(cli({"trace", kSample, "--inputs", "1"}).code == 3);
  }
  SUBCASE("usage errors") {
    CHECK(cli({}).code == 1);
    CHECK(cli({"slice", kSample}).code == 1);
    CHECK(cli({"slice", kSample, "--criterion", "4:q", "--object", "T1"}).code == 1);
    CHECK(cli({"slice", kSample, "--criterion", "nonsense"}).code == 1);
    CHECK(cli({"slice", kSample, "--inputs", "1,x", "--object", "T1"}).code == 1);
    CHECK(cli({"slice", "/nonexistent.moo", "--object", "T1"}).code == 1);
    CHECK(cli({"--help"}).code == 0);
  }
}

TEST_CASE("inputs from a file; the flag wins") {
  auto file = temp_file("inputs.txt", "1 2\n3,4\n");
  Result r = cli({"slice", kSample, "--inputs-file", file.string(), "--object", "T4", "--json"});
  CHECK(r.code == 0);
  auto other = temp_file("inputs_short.txt", "1");
  Result both = cli({"slice", kSample, "--inputs-file", other.string(), "--inputs", "1,2,3,4",
                     "--object", "T4", "--json"});
  CHECK(both.code == 0);
  CHECK(both.out == r.out);
}

TEST_CASE("budget from flag and environment") {
  auto loop = temp_file("loop.moo", "void main() { int p; p = 1; while (p > 0) { p = p + 1; } }");
  Result r = cli({"trace", loop.string(), "--budget", "10"});
  CHECK(r.code == 3);
  CHECK(r.err.find("budget") != std::string::npos);

  setenv("DYNSLICE_BUDGET", "7", 1);
  Result env = cli({"trace", loop.string()});
  unsetenv("DYNSLICE_BUDGET");
  CHECK(env.code == 3);
  std::size_t lines = 0;
  for (char c : env.out) lines += c == '\n';
  std::size_t flag_lines = 0;
  for (char c : cli({"trace", loop.string(), "--budget", "7"}).out) flag_lines += c == '\n';
  CHECK(lines == flag_lines);
}

TEST_CASE("cdg output") {
  Result dot = cli({"cdg", kSample});
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("digraph cdg {", 0) == 0);
  Result json = cli({"cdg", kSample, "--json"});
  CHECK(nlohmann::json::parse(json.out).size() == 29);
  auto path = std::filesystem::temp_directory_path() / "dynslice_cli_cdg.dot";
  Result file = cli({"cdg", kSample, "--dot", path.string()});
  CHECK(file.code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == dot.out);
}

TEST_CASE("trace output is one JSON event per line") {
  Result r = cli({"trace", kSample, "--inputs", "1,2,3,4"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j.contains("event"));
    ++n;
  }
  CHECK(n > 50);
}

TEST_CASE("check") {
  SUBCASE("sample program") {
    Result r = cli({"check", kSample, "--inputs", "1,2,3,4"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("OK", 0) == 0);
  }
  SUBCASE("generated program") {
    Result r = cli({"check", "--seed", "42", "--json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "ok");
    CHECK(j["criteria"].get<int>() > 0);
  }
  SUBCASE("corrupted trace") {
    Result t = cli({"trace", kSample, "--inputs", "1,2,3,4"});
    std::istringstream in(t.out);
    std::string line, corrupted;
    bool done = false;
    while (std::getline(in, line)) {
      auto j = nlohmann::json::parse(line);
      // Drop what the first `a = x` read.
      if (!done && j["event"] == "StmtExecuted" && j["id"] == 17) {
        j["uses"] = nlohmann::json::array();
        done = true;
      }
      corrupted += j.dump() + "\n";
    }
    REQUIRE(done);
    auto path = temp_file("corrupt.ndjson", corrupted);
    Result r = cli({"check", kSample, "--inputs", "1,2,3,4", "--trace", path.string()});
    CHECK(r.code == 5);
    CHECK(r.out.rfind("MISMATCH", 0) == 0);

    auto good = temp_file("good.ndjson", t.out);
    CHECK(cli({"check", kSample, "--inputs", "1,2,3,4", "--trace", good.string()}).code == 0);

    auto junk = temp_file("junk.ndjson", "{\"event\":\"Returned\"}\n");
    CHECK(cli({"check", kSample, "--inputs", "1,2,3,4", "--trace", junk.string()}).code == 5);
  }
}

TEST_CASE("gen prints a parseable program") {
  Result r = cli({"gen", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK_NOTHROW(dynslice::parse(r.out));
}
