#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ghostcheck/cli.hpp"
#include "ghostcheck/serialization.hpp"

using namespace ghostcheck;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "ghostcheck");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(GHOSTCHECK_FIXTURE_DIR) + "/" + name; }

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / (std::string("ghostcheck_test_") + name)).string();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST(Cli, CheckWorkedExampleFixture) {
  const CliRun r = run({"check", fixture("worked_example_N3_h4.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "rank 12/12, NOT eventually smoothable (obstruction fires)")) << r.out;
  EXPECT_TRUE(contains(r.out, "corollary: inconclusive (obstruction vanishes)"));

  const CliRun j = run({"check", "--json", fixture("worked_example_N3_h4.json")});
  ASSERT_EQ(j.code, 0);
  const Json report = Json::parse(j.out);
  EXPECT_EQ(report["components"][0]["theorem"]["rank"], 12);
  EXPECT_EQ(report["components"][0]["theorem"]["verdict"], "NotEventuallySmoothable");
  EXPECT_TRUE(report["components"][0]["theorem"]["kernel_witness"].is_null());
  EXPECT_EQ(report["components"][0]["corollary"]["verdict"], "Inconclusive");
  EXPECT_EQ(report["map_verdict"], "NotEventuallySmoothable");
  EXPECT_EQ(report["version"], std::string(kToolVersion));
}

TEST(Cli, CheckZeroDerivative) {
  const CliRun r = run({"check", "--json", fixture("zero_deriv.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json report = Json::parse(r.out);
  const Json& th = report["components"][0]["theorem"];
  EXPECT_EQ(th["verdict"], "Inconclusive");
  EXPECT_EQ(th["kernel_witness"], Json::parse(R"(["0","1","0"])"));
  EXPECT_EQ(report["components"][0]["corollary"]["witness_D"], Json::parse("[1]"));
  EXPECT_EQ(report["map_verdict"], "Inconclusive");
}

TEST(Cli, MultiComponentMapVerdict) {
  const CliRun r = run({"check", "--json", fixture("multi_component.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json report = Json::parse(r.out);
  EXPECT_EQ(report["components"].size(), 2u);
  EXPECT_EQ(report["components"][0]["theorem"]["verdict"], "NotEventuallySmoothable");
  EXPECT_EQ(report["components"][1]["theorem"]["verdict"], "Inconclusive");
  EXPECT_EQ(report["map_verdict"], "NotEventuallySmoothable");
  EXPECT_EQ(report["local_model"]["verdict"], "pass");
}

TEST(Cli, BadInputExitCodes) {
  CliRun r = run({"check", fixture("malformed.json")});
  EXPECT_EQ(r.code, kExitBadInput);
  EXPECT_TRUE(contains(r.err, "malformed.json:5:")) << r.err;

  r = run({"check", fixture("bad_delta_length.json")});
  EXPECT_EQ(r.code, kExitBadInput);
  EXPECT_TRUE(contains(r.err, "$.points[1].delta")) << r.err;

  r = run({"check", "--json", fixture("bad_delta_length.json")});
  EXPECT_EQ(r.code, kExitBadInput);
  EXPECT_EQ(Json::parse(r.out)["error"]["code"], "InvalidInput");

  EXPECT_EQ(run({"check", fixture("does_not_exist.json")}).code, kExitBadInput);
  EXPECT_EQ(run({"check"}).code, kExitBadInput);
  EXPECT_EQ(run({"frobnicate"}).code, kExitBadInput);
  EXPECT_EQ(run({"localmodel", fixture("zero_deriv.json")}).code, kExitBadInput);
  EXPECT_EQ(run({"check", fixture("localmodel_x_m2.json")}).code, kExitBadInput);
}

TEST(Cli, BadThreadCount) {
  ::setenv("GHOSTCHECK_THREADS", "zero", 1);
  const CliRun r = run({"check", fixture("zero_deriv.json")});
  ::unsetenv("GHOSTCHECK_THREADS");
  EXPECT_EQ(r.code, kExitBadInput);
  EXPECT_TRUE(contains(r.err, "GHOSTCHECK_THREADS"));
}

TEST(Cli, ReportsAreByteStable) {
  const CliRun a = run({"check", "--json", fixture("worked_example_N3_h4.json")});
  const CliRun b = run({"check", "--json", fixture("worked_example_N3_h4.json")});
  ::setenv("GHOSTCHECK_THREADS", "4", 1);
  const CliRun c = run({"check", "--json", fixture("worked_example_N3_h4.json")});
  const CliRun d = run({"check", fixture("multi_component.json")});
  ::unsetenv("GHOSTCHECK_THREADS");
  const CliRun e = run({"check", fixture("multi_component.json")});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_EQ(d.out, e.out);
}

TEST(Cli, LocalModelExamples) {
  CliRun r = run({"localmodel", "--json", fixture("localmodel_x_m2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  Json report = Json::parse(r.out);
  EXPECT_EQ(report["verdict"], "pass");
  ASSERT_EQ(report["levels"].size(), 2u);
  EXPECT_EQ(report["levels"][0]["components"][0]["name"], "E_1");
  EXPECT_EQ(report["levels"][0]["components"][0]["residue"], Json::parse(R"(["1"])"));
  EXPECT_EQ(report["levels"][1]["components"][0]["name"], "C_tilde");
  EXPECT_EQ(report["levels"][1]["components"][0]["residue"], Json::parse(R"(["1"])"));

  r = run({"localmodel", "--json", fixture("localmodel_ty_m3.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  report = Json::parse(r.out);
  EXPECT_EQ(report["verdict"], "fail");
  EXPECT_EQ(report["finding"]["code"], "NonConstantLevel");
  EXPECT_EQ(report["finding"]["level"], 2);

  r = run({"localmodel", "--json", fixture("localmodel_zero_m1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  report = Json::parse(r.out);
  EXPECT_EQ(report["verdict"], "pass");
  for (const auto& level : report["levels"])
    for (const auto& c : level["components"]) EXPECT_EQ(c["pole_order"], 0);

  r = run({"localmodel", fixture("localmodel_x_m2.json")});
  EXPECT_TRUE(contains(r.out, "residue check: pass"));
}

TEST(Cli, GenerateThenCheck) {
  for (const char* model : {"hyperelliptic", "nodal_rational"}) {
    const std::string path = temp_path((std::string(model) + ".json").c_str());
    const CliRun g = run({"generate", "--N", "2", "--h", "3", "--model", model, "--out", path});
    ASSERT_EQ(g.code, 0) << g.err;
    const CliRun c = run({"check", "--json", path});
    ASSERT_EQ(c.code, 0) << c.err;
    const Json report = Json::parse(c.out);
    EXPECT_EQ(report["components"][0]["theorem"]["rank"], 6);
    EXPECT_EQ(report["components"][0]["theorem"]["verdict"], "NotEventuallySmoothable");
    EXPECT_EQ(report["components"][0]["corollary"]["verdict"], "Inconclusive");
    std::filesystem::remove(path);
  }
  const CliRun raw = run({"generate", "--N", "2", "--h", "2", "--raw"});
  ASSERT_EQ(raw.code, 0);
  EXPECT_TRUE(Json::parse(raw.out)["components"][0].contains("points"));

  const CliRun rnd1 = run({"generate", "--random", "--g", "2", "--N", "3", "--n", "4", "--seed", "9"});
  const CliRun rnd2 = run({"generate", "--random", "--g", "2", "--N", "3", "--n", "4", "--seed", "9"});
  ASSERT_EQ(rnd1.code, 0) << rnd1.err;
  EXPECT_EQ(rnd1.out, rnd2.out);

  EXPECT_EQ(run({"generate", "--N", "1", "--h", "3"}).code, kExitBadInput);
  EXPECT_EQ(run({"generate", "--N", "2", "--h", "2", "--model", "cubic"}).code, kExitBadInput);
}

TEST(Cli, Dims) {
  CliRun r = run({"dims", "--N", "3", "--g", "4", "--d", "12", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["dim_moduli"], 48);

  r = run({"dims", "--json", "--stratum", fixture("stratum_N3_h4.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json report = Json::parse(r.out);
  EXPECT_EQ(report["stratum"]["dim_stratum"], 48);
  EXPECT_EQ(report["stratum"]["dim_moduli_plus_Nh_minus_n"], 48);

  EXPECT_EQ(run({"dims", "--N", "3", "--g", "4", "--d", "6"}).code, kExitBadInput);
  EXPECT_EQ(run({"dims", "--N", "2", "--stratum", fixture("stratum_N3_h4.json")}).code, kExitBadInput);
  EXPECT_EQ(run({"dims", "--N", "3"}).code, kExitBadInput);
}

TEST(Cli, VersionAndHelp) {
  CliRun r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, std::string(kToolVersion)));
  r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "selftest"));
}
