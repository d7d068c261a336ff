#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const char* exe = std::getenv("LEIBNIZ_CLI");
  if (!exe) throw std::runtime_error("LEIBNIZ_CLI not set");
  std::string cmd = std::string(exe) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST(Cli, VerifyUnifiedFamily) {
  auto r = cli("verify \"L(a,b,g)\" -n 7 --param a=1 --param b=0 --param g=2 --checks leibniz,series");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "PASS leibniz"));
}

TEST(Cli, Table1) {
  auto r = cli("table1 -n 8");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "20/20 rows"));
}

TEST(Cli, CodimOneProbe) {
  auto r = cli("extend \"L(a,b,g)\" --param a=0 --param b=0 --param g=1 -n 6 -k 1 --mode probe");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "infeasible"));
  EXPECT_TRUE(has(r.out, "beta = 1"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("build G -n 8 --param a=1 --param b=0 --param g=0").code, 2);
  EXPECT_EQ(cli("build nope -n 8").code, 2);
  EXPECT_EQ(cli("build L -n 7 --param a=x").code, 2);
  EXPECT_EQ(cli("verify L -n 7 --param a=0 --param b=0 --param g=0 --checks bogus").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("verify R3 -n 7").code, 1);
  EXPECT_EQ(cli("build Hc2_2 -n 7 --variant printed").code, 1);
  EXPECT_EQ(cli("catalog").code, 0);
}

TEST(Cli, JsonIsDeterministic) {
  const std::string cmd = "--json --seed 5 verify Hc2_6 -n 7";
  auto a = cli(cmd), b = cli(cmd);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["schema"], 1);
}

TEST(Cli, BuildFileRoundTrip) {
  const std::string path = testing::TempDir() + "lnr73.json";
  ASSERT_EQ(cli("build Lnr -n 7 --param r=3 -o " + path).code, 0);
  auto r = cli("--json fingerprint --file " + path);
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["fingerprint"]["is_lie"], "true");
  auto d = cli("derive --file " + path);
  EXPECT_EQ(d.code, 0) << d.out;
}

TEST(Cli, PairwiseMarksCollisions) {
  auto r = cli("--json fingerprint --pairwise H2 -n 7");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  for (const auto& p : j["result"]["pairs"])
    if (p["verdict"] == "collision") { EXPECT_EQ(p["marker"], "needs-manual-argument"); }
}

TEST(Cli, CharseqAndGrade) {
  auto c = cli("charseq L -n 8 --param a=0 --param b=0 --param g=0 --samples 20");
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(has(c.out, "(6,2)"));
  auto g = cli("grade G -n 7 --param a=0 --param b=0 --param g=1");
  EXPECT_EQ(g.code, 0) << g.out;
  EXPECT_TRUE(has(g.out, "graded pieces"));
}

TEST(Cli, LieProbe) {
  auto r = cli("extend Lnr -n 7 --param r=3 -k 2 --mode probe");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "PASS solved leaves are Lie"));
}
