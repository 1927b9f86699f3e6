#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "costsem/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

std::string write_temp(const std::string& name, const std::string& contents) {
  std::string path = "/tmp/costsem_test_" + name;
  std::ofstream out(path);
  out << contents;
  return path;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = costsem::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check / run-op / adequacy on the identity application") {
  std::string path = write_temp("id_tt.stlc", "(fn (x: bool) => x) tt\n");

  auto checked = invoke({"check", path});
  CHECK(checked.code == 0);
  CHECK(checked.out == "bool\n");

  auto adequacy = invoke({"adequacy", path});
  CHECK(adequacy.code == 0);
  CHECK(adequacy.out.find("verdict: match") != std::string::npos);
  CHECK(adequacy.out.find("(cost 1)") != std::string::npos);

  // trace output is the initial term plus one line per transition: cost + 1
  auto traced = invoke({"run-op", path, "--trace"});
  CHECK(traced.code == 0);
  std::size_t lines = 0;
  for (char c : traced.out)
    if (c == '\n') ++lines;
  CHECK(lines == 2);
}

TEST_CASE("json adequacy report has the pinned schema") {
  std::string path = write_temp("id_tt2.stlc", "(fn (x: bool) => x) tt");
  auto r = invoke({"--json", "adequacy", path});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"program", "phase", "operational",
                                         "denotational", "verdict"});
  std::vector<std::string> side_keys;
  for (auto it = j["operational"].begin(); it != j["operational"].end(); ++it)
    side_keys.push_back(it.key());
  CHECK(side_keys == std::vector<std::string>{"status", "cost", "value", "store"});
  CHECK(j["phase"] == "intensional");
  CHECK(j["verdict"] == "match");
  CHECK(j["operational"]["status"] == "value");
  CHECK(j["operational"]["cost"] == 1);
  CHECK(j["operational"]["store"].is_null());

  auto ext = invoke({"--json", "--phase", "extensional", "adequacy", path});
  CHECK(ext.code == 0);
  json je = json::parse(ext.out);
  CHECK(je["operational"]["cost"].is_null());
  CHECK(je["denotational"]["cost"].is_null());
  CHECK(je["verdict"] == "match");
}

TEST_CASE("ma adequacy and store reporting") {
  std::string path = write_temp(
      "loop.ma", "dcl a := tt in while[a] { bnd x <- cmd { set[a] := ff } in ret () }");
  auto r = invoke({"--json", "adequacy", path});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "match");
  CHECK(j["operational"]["cost"] == 6);
  CHECK(j["operational"]["store"] == json::array());

  // trace line count for commands: initial state + six transitions
  auto traced = invoke({"run-op", path, "--trace"});
  std::size_t lines = 0;
  for (char c : traced.out)
    if (c == '\n') ++lines;
  CHECK(lines == 7);

  // adequacy also covers expression files
  std::string exp_path = write_temp("apply.ma", "(fn (x: bool) => x) tt");
  auto exp_r = invoke({"--json", "adequacy", exp_path});
  CHECK(exp_r.code == 0);
  json je = json::parse(exp_r.out);
  CHECK(je["verdict"] == "match");
  CHECK(je["operational"]["cost"] == 1);
  CHECK(je["operational"]["store"].is_null());
}

TEST_CASE("exit codes") {
  std::string bad = write_temp("bad.stlc", "(fn (x: bool => x) tt");
  CHECK(invoke({"check", bad}).code == 2);

  std::string ill = write_temp("ill.stlc", "tt ff");
  CHECK(invoke({"check", ill}).code == 1);
  CHECK(invoke({"run-op", ill}).code == 1);

  std::string spin = write_temp(
      "spin.ma", "dcl a := tt in bnd x <- cmd { while[a] { ret () } } in get[a]");
  CHECK(invoke({"run-op", spin, "--fuel", "100"}).code == 3);
  CHECK(invoke({"run-den", spin, "--fuel", "100"}).code == 3);
  CHECK(invoke({"adequacy", spin, "--fuel", "100"}).code == 3);

  std::string fine = write_temp("fine.ma", "ret tt");
  CHECK(invoke({"run-op", fine}).code == 0);
}

TEST_CASE("fuel comes from the environment unless the flag overrides it") {
  // cost-6 program: needs seven transitions' worth of budget at fuel >= 6
  std::string path = write_temp(
      "flip.ma", "dcl a := tt in while[a] { bnd x <- cmd { set[a] := ff } in ret () }");
  setenv("COSTSEM_FUEL", "3", 1);
  CHECK(invoke({"run-op", path}).code == 3);
  CHECK(invoke({"run-op", path, "--fuel", "100"}).code == 0);
  unsetenv("COSTSEM_FUEL");
  CHECK(invoke({"run-op", path}).code == 0);
}

TEST_CASE("seeded fuzzing is reproducible") {
  auto first = invoke({"--json", "fuzz", "--lang", "stlc", "--count", "50",
                       "--seed", "7"});
  auto second = invoke({"--json", "fuzz", "--lang", "stlc", "--count", "50",
                        "--seed", "7"});
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  json j = json::parse(first.out);
  CHECK(j["count"] == 50);
  CHECK(j["matches"] == 50);
  CHECK(j["failures"] == json::array());

  auto ma_run = invoke({"--json", "fuzz", "--lang", "ma", "--count", "50",
                        "--seed", "7", "--fuel", "10000"});
  CHECK(ma_run.code == 0);
}
