// End-to-end checks of the command-line driver. The binary path arrives in
// KNAPQ_CLI and the bundled data directory in KNAPQ_DATA (set by ctest).

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace {

std::string cli() {
  const char* p = std::getenv("KNAPQ_CLI");
  return p ? p : "";
}

std::string data_dir() {
  const char* p = std::getenv("KNAPQ_DATA");
  return p ? p : "";
}

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

std::string temp_path() {
  char tmpl[] = "/tmp/knapq_cli_test_XXXXXX";
  int fd = mkstemp(tmpl);
  REQUIRE(fd >= 0);
  close(fd);
  return tmpl;
}

RunResult run(const std::string& args) {
  std::string out_file = temp_path();
  std::string cmd = args + " > " + out_file + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::remove(out_file.c_str());
  return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli is configured") {
  REQUIRE(!cli().empty());
  REQUIRE(!data_dir().empty());
}

TEST_CASE("solve matches the committed golden report") {
  auto r = run("cd " + data_dir() + " && " + cli() +
               " solve --instance sample8.json");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text == slurp(data_dir() + "/golden_solve_sample8.json"));
}

TEST_CASE("worker count does not change the report") {
  auto r = run("cd " + data_dir() + " && " + cli() +
               " solve --instance sample8.json --workers 3");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text == slurp(data_dir() + "/golden_solve_sample8.json"));
}

TEST_CASE("generate is byte-reproducible for a fixed seed") {
  std::string cmd = cli() + " generate --kind random --n 9 --seed 123";
  auto a = run(cmd);
  auto b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  auto c = run(cli() + " generate --kind random --n 9 --seed 124");
  CHECK(c.stdout_text != a.stdout_text);
}

TEST_CASE("solving an all-trivial instance needs no queries") {
  std::string inst = temp_path();
  std::ofstream(inst)
      << "{\"capacity\":\"5\",\"items\":["
         "{\"id\":1,\"weight\":\"2\",\"lower\":\"3\",\"upper\":\"3\","
         "\"profit\":\"3\",\"trivial\":true},"
         "{\"id\":2,\"weight\":\"3\",\"lower\":\"4\",\"upper\":\"4\","
         "\"profit\":\"4\",\"trivial\":true}]}";
  auto r = run(cli() + " solve --instance " + inst);
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"query_set\": []") != std::string::npos);
  std::remove(inst.c_str());
}

TEST_CASE("malformed instance file exits 2") {
  std::string bad = temp_path();
  std::ofstream(bad) << "{\"capacity\": \"zero\"}";
  auto r = run(cli() + " solve --instance " + bad);
  CHECK(r.exit_code == 2);
  std::remove(bad.c_str());
}

TEST_CASE("verify exit codes") {
  // all-queried is feasible on the sample
  auto good = run("cd " + data_dir() + " && " + cli() +
                  " verify --instance sample8.json --query 2,3,6,7,8 "
                  "--alpha 1 --beta 1");
  CHECK(good.exit_code == 0);
  auto bad = run("cd " + data_dir() + " && " + cli() +
                 " verify --instance sample8.json --query '' "
                 "--alpha 1 --beta 1");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("prefix checks the threshold precondition") {
  auto r = run("cd " + data_dir() + " && " + cli() +
               " prefix --instance sample8.json --threshold 1/99");
  CHECK(r.exit_code == 2);
}

TEST_CASE("generate sscover and solve the reduced instance end to end") {
  std::string inst = temp_path();
  auto gen = run(cli() + " generate --kind sscover --input " + data_dir() +
                 "/sscover_example.json --out " + inst);
  CHECK(gen.exit_code == 0);
  // the single y item is the whole answer
  auto ver = run(cli() + " verify --instance " + inst +
                 " --query 11 --alpha 1 --beta 1 --no-oracle");
  CHECK(ver.exit_code == 0);
  std::remove(inst.c_str());
}

TEST_CASE("generate subsetsum embeds the threshold") {
  std::string inst = temp_path();
  auto gen = run(cli() + " generate --kind subsetsum --input " + data_dir() +
                 "/subsetsum_example.json --c 1 --out " + inst);
  CHECK(gen.exit_code == 0);
  CHECK(slurp(inst).find("threshold") != std::string::npos);
  auto pre = run(cli() + " prefix --instance " + inst);
  CHECK(pre.exit_code == 0);
  std::remove(inst.c_str());
}
