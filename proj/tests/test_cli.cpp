#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "commands.hpp"
#include "orbitsum/certificate_json.hpp"
#include "support/models.hpp"
#include "support/tempdir.hpp"

using namespace orbitsum;
using namespace orbitsum::cli;

TEST(Analyze, ExitCodesFollowVerdicts) {
  std::ostringstream out, err;
  RunConfig cfg;
  EXPECT_EQ(cmd_analyze(models::kExample1, cfg, out, err), 0);
  auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["verdict"]["kind"], "CertifiedDFinite");
  EXPECT_NE(err.str().find("group order 12"), std::string::npos);
  EXPECT_EQ(cmd_analyze(models::kExample2, cfg, out, err), 2);
  cfg.zero_orbit_gate = false;
  EXPECT_EQ(cmd_analyze(models::kExample2, cfg, out, err), 4);
  cfg.group_cap = 4;
  EXPECT_EQ(cmd_analyze(models::kExample1, cfg, out, err), 3);
  EXPECT_EQ(cmd_analyze("(1,0,0),(0,1,0)", {}, out, err), 3);
  EXPECT_EQ(cmd_analyze("(2,0,0)", {}, out, err), kUsageError);
  EXPECT_EQ(cmd_analyze("", {}, out, err), kUsageError);
}

TEST(Analyze, WritesVerifiableCertificate) {
  TempDir dir;
  RunConfig cfg;
  cfg.out = dir.file("ex1.json");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_analyze(models::kExample1, cfg, out, err), 0);
  EXPECT_EQ(slurp(cfg.out), out.str());
  std::ostringstream vout, verr;
  EXPECT_EQ(cmd_verify(cfg.out, vout, verr), 0) << verr.str();
  EXPECT_EQ(vout.str(), "ok 0x0209862 CertifiedDFinite\n");

  auto text = slurp(cfg.out);
  auto pos = text.find("\"final_cone\"");
  ASSERT_NE(pos, std::string::npos);
  auto close = text.find(']', text.find('[', text.find('[', pos) + 1));
  std::string tampered = text.substr(0, text.find('[', text.find('[', pos) + 1)) + "[\"9\",\"0\",\"0\",\"0\"" +
                         text.substr(close);
  spit(dir.file("bad.json"), tampered);
  std::ostringstream bout, berr;
  EXPECT_EQ(cmd_verify(dir.file("bad.json"), bout, berr), 1);
  EXPECT_NE(berr.str().find("final_cone"), std::string::npos) << berr.str();

  spit(dir.file("junk.json"), "{\"schema\":1}");
  EXPECT_EQ(cmd_verify(dir.file("junk.json"), bout, berr), 1);
  EXPECT_EQ(cmd_verify(dir.file("missing.json"), bout, berr), kUsageError);
}

TEST(Oracle, ReportsPass) {
  std::ostringstream out, err;
  RunConfig cfg;
  cfg.oracle_n = 5;
  cfg.identity_n = 2;
  EXPECT_EQ(cmd_oracle(models::kExample1, cfg, out, err), 0) << err.str();
  auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["positive_part"], true);
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_oracle(models::kExample2, cfg, out2, err2), 0);
  EXPECT_TRUE(nlohmann::json::parse(out2.str())["positive_part"].is_null());
  EXPECT_EQ(cmd_oracle("(1,0,0),(0,1,0)", cfg, out, err), 3);
  cfg.group_cap = 4;
  EXPECT_EQ(cmd_oracle(models::kExample1, cfg, out, err), 3);
}

TEST(Census, WritesOutputsAndResumes) {
  TempDir dir;
  spit(dir.file("list.txt"), std::string(models::kExample1) + "\n" + models::kExample2 + "\n");
  RunConfig cfg;
  cfg.out = dir.file("two");
  cfg.jobs = 2;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_census({std::nullopt, dir.file("list.txt")}, cfg, out, err), 0) << err.str();
  EXPECT_NE(out.str().find("CertifiedDFinite,1\n"), std::string::npos);
  EXPECT_NE(out.str().find("ZeroOrbitSum,1\n"), std::string::npos);
  EXPECT_NE(out.str().find("permutations of the axes"), std::string::npos);
  EXPECT_EQ(slurp(cfg.out + ".summary.csv").find("verdict,count\n"), 0u);

  RunConfig range = cfg;
  range.out = dir.file("r");
  ASSERT_EQ(cmd_census({std::make_pair(1u, 3000u), ""}, range, out, err), 0);
  const auto full_jsonl = slurp(range.out + ".jsonl");
  const auto full_csv = slurp(range.out + ".csv");

  auto cut = full_jsonl.substr(0, full_jsonl.size() / 2);
  spit(range.out + ".jsonl", cut);
  range.resume = true;
  std::ostringstream rerr;
  ASSERT_EQ(cmd_census({std::make_pair(1u, 3000u), ""}, range, out, rerr), 0) << rerr.str();
  EXPECT_EQ(slurp(range.out + ".jsonl"), full_jsonl);
  if (cut.back() != '\n') EXPECT_NE(rerr.str().find("incomplete final line"), std::string::npos);
  auto strip_millis = [](const std::string& csv) {
    std::string outs;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) outs += line.substr(0, line.rfind(',')) + "\n";
    return outs;
  };
  EXPECT_EQ(strip_millis(slurp(range.out + ".csv")), strip_millis(full_csv));

  ASSERT_EQ(cmd_census({std::make_pair(1u, 3000u), ""}, range, out, err), 0);
  EXPECT_EQ(slurp(range.out + ".jsonl"), full_jsonl);

  EXPECT_EQ(cmd_census({std::make_pair(1u, 100u), ""}, range, out, err), kUsageError);

  spit(range.out + ".jsonl", "garbage\n");
  EXPECT_EQ(cmd_census({std::make_pair(1u, 3000u), ""}, range, out, err), kUsageError);
  EXPECT_EQ(cmd_census({std::nullopt, dir.file("absent.txt")}, cfg, out, err), kUsageError);
}
