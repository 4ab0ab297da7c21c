#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(LEB_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  while (fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  int rc = pclose(p);
  r.status = WEXITSTATUS(rc);
  return r;
}

std::string terms(const std::string& f) { return std::string(LEB_TERMS_DIR) + "/" + f; }

}  // namespace

TEST_CASE("measure subcommand") {
  RunResult r = run("measure " + terms("half_set.term"));
  CHECK(r.status == 0);
  CHECK(r.out.find("measure = 1/2") != std::string::npos);

  RunResult rb = run("measure " + terms("two_bits.term") + " --brute-force-check 0");
  CHECK(rb.status == 0);
  CHECK(rb.out.find("measure = 1/4") != std::string::npos);
  CHECK(rb.out.find("[agrees]") != std::string::npos);
}

TEST_CASE("modulus subcommand") {
  RunResult r = run("modulus " + terms("two_bits.term"));
  CHECK(r.status == 0);
  CHECK(r.out.find("modulus = 2") != std::string::npos);
  RunResult j = run("modulus " + terms("half_set.term") + " --json");
  CHECK(j.status == 0);
  CHECK(j.out.find("\"query\": 0") != std::string::npos);
}

TEST_CASE("eliminate subcommand") {
  RunResult r = run("eliminate " + terms("basic_open.term"));
  CHECK(r.status == 0);
  CHECK(r.out.find("fragment: T0[mu] ok") != std::string::npos);
  CHECK(r.out.find("route=clopen-exact") != std::string::npos);
  CHECK(r.out.find("value=1/2") != std::string::npos);

  RunResult n = run("eliminate " + terms("nested.term"));
  CHECK(n.status == 0);
  CHECK(n.out.find("occurrence 1") != std::string::npos);  // two replacements

  // verification failure through the fault-injection flag
  RunResult f = run("eliminate " + terms("basic_open.term") + " --inject-fault --samples 5");
  CHECK(f.status == 1);
  CHECK(f.out.find("MISMATCH") != std::string::npos);

  // malformed input is a usage error
  RunResult b = run("eliminate " + terms("broken.term"));
  CHECK(b.status == 2);
}

TEST_CASE("dialectica subcommand") {
  RunResult r = run("dialectica " + terms("pi2.formula"));
  CHECK(r.status == 0);
  CHECK(r.out.find("exists x:((0 -> 0) -> 0)") != std::string::npos);
  CHECK(r.out.find("forall f:(0 -> 0)") != std::string::npos);
}

TEST_CASE("normalize subcommand") {
  RunResult r = run("normalize " + terms("basic_open.term"));
  CHECK(r.status == 0);
  CHECK(r.out.find("occurrence 0: kind=Leb") != std::string::npos);
}

TEST_CASE("baire subcommands") {
  std::string dir = "/tmp/leb_cli_test";
  std::string mk = "mkdir -p " + dir;
  REQUIRE(std::system(mk.c_str()) == 0);

  RunResult w = run("baire from-term " + terms("half_set.term") + " -o " + dir + "/w.json");
  CHECK(w.status == 0);
  RunResult w2 = run("baire from-term " + terms("two_bits.term") + " -o " + dir + "/w2.json");
  CHECK(w2.status == 0);

  RunResult u = run("baire union " + dir + "/w.json " + dir + "/w2.json -o " + dir + "/u.json");
  CHECK(u.status == 0);

  RunResult c = run("baire complement " + dir + "/u.json --depth 3 -o " + dir + "/c.json");
  CHECK(c.status == 0);

  RunResult k = run("baire check " + dir + "/c.json --depth 3");
  CHECK(k.status == 0);
  CHECK(k.out.find("check passed") != std::string::npos);
}
