#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args)
{
  std::string cmd = std::string(PEIFFER_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p)
    return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
    r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(SAMPLES_DIR) + "/" + name; }

TEST(Cli, ExitZeroWhenPropertyHolds)
{
  auto r = run("crossed --input " + sample("s3_identity.json"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("verdict: true"), std::string::npos);
}

TEST(Cli, ExitOneWhenPropertyFails)
{
  auto r = run("central --input " + sample("s3_onto_z2.json"));
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("witness:"), std::string::npos);
}

TEST(Cli, ExitTwoOnInvalidInputWithDiagnostic)
{
  auto r = run("crossed --input " + std::string(TEST_DATA_DIR) + "/not_equivariant.json");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("NotEquivariant"), std::string::npos);
  EXPECT_NE(r.out.find("pxmods.P"), std::string::npos);

  EXPECT_EQ(run("crossed").code, 2);
  EXPECT_EQ(run("crossed --input /nonexistent.json").code, 2);
  EXPECT_EQ(run("verify --property no-such-property").code, 2);
  EXPECT_EQ(run("--format yaml crossed --input " + sample("s3_identity.json")).code, 2);
  EXPECT_EQ(run("galois-group --input " + sample("s3_onto_z2.json")).code, 2);
}

TEST(Cli, JsonOutputParses)
{
  auto r = run("galois-group --format json --no-timing --input " + sample("q8_over_center.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["galois_group"]["order"], 2);
  EXPECT_FALSE(j.contains("seconds"));
}

TEST(Cli, StdinAndOutFile)
{
  std::string out = std::string(::testing::TempDir()) + "/peiffer_report.json";
  auto r = run("peiffer --format json -i - -o " + out + " < " + sample("s3_over_zero.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  std::ifstream in(out);
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["result"]["commutator"]["order"], 3);
}

TEST(Cli, FiveTermReportsNotChecked)
{
  auto r = run("five-term --input " + sample("s3_five_term.json"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("exact_at_1_2: not checked (projectivity required)"), std::string::npos);
}

TEST(Cli, EnumerateCounts)
{
  auto r = run("enumerate --theory lie --format json --no-timing");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["pxmods"], 288);
  EXPECT_EQ(j["extensions"], 21705);
  EXPECT_EQ(j["double_extensions"], 3261);
}

TEST(Cli, VerifyIsByteStableWithoutTiming)
{
  std::string args = "verify --property peiffer-image-preservation --max-order 24 --seed 5 "
                     "--samples 100 --format json --no-timing";
  auto a = run(args);
  auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"failures\": 0"), std::string::npos);
}

TEST(Cli, HelpExitsZero)
{
  auto r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

} // namespace
