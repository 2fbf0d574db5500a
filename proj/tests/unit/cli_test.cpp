#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

using namespace chroma_infer::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("chroma_infer_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, ConvertXyyToLab) {
  const CliRun r = run({"convert", "--xyy", "0.31273,0.32902,18.419", "--to", "lab"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "50.00 0.00 0.00\n");
}

TEST(Cli, ConvertLabToSrgb) {
  const CliRun r = run({"convert", "--lab", "100,0,0", "--to", "srgb"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "255 255 255\n");
  const CliRun hex = run({"convert", "--lab", "50,0,0", "--to", "hex"});
  EXPECT_EQ(hex.out, "#777777\n");
}

TEST(Cli, ConvertLabToLch) {
  const CliRun r = run({"convert", "--lab", "50,28.891,-73.589", "--to", "lch"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  double L, C, h;
  in >> L >> C >> h;
  EXPECT_NEAR(C, 79.057, 0.01);
  EXPECT_NEAR(h, 291.435, 0.01);
}

TEST(Cli, MalformedTripleIsUsageError) {
  const CliRun r = run({"convert", "--xyy", "0.3,abc,18", "--to", "lab"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({"convert", "--lab", "1,2", "--to", "lch"}).code, 2);
  EXPECT_EQ(run({"convert", "--lab", "50,0,0", "--to", "cmyk"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("pipeline"), std::string::npos);
}

TEST(Cli, PredictInlineMerits) {
  const CliRun r = run({"predict", "--merits", "0.8,0.2,0.7,0.3", "--weights", "1,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["result"]["signed_s"].get<double>(), 0.944266, 1e-6);
  EXPECT_EQ(j["result"]["assignment"], "dark_more");
}

TEST(Cli, PredictRelationalOnly) {
  const CliRun r =
      run({"predict", "--merits", "0.1,0.9,0.2,0.8", "--weights", "0,1", "--salience", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["result"]["assignment"], "dark_more");
  EXPECT_DOUBLE_EQ(j["result"]["p_dark_more"].get<double>(), 1.0);
}

TEST(Cli, PredictUnknownConceptIsDataError) {
  const CliRun r = run({"predict", "--concept", "mud", "--light", "21", "--dark", "1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("mud"), std::string::npos);
}

TEST(Cli, PredictWithConcept) {
  const CliRun r = run({"predict", "--concept", "fire", "--light", "21", "--dark", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["weights"]["wa"].get<double>(), 0.7);
  EXPECT_EQ(run({"predict", "--concept", "fire", "--light", "1", "--dark", "21"}).code, 2);
}

TEST(Cli, PairsCounts) {
  const CliRun r = run({"pairs", "--counts-only"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["total_pairs"], 2485);
  EXPECT_EQ(j["equal_lightness"], 637);
}

TEST(Cli, FitAndAssociations) {
  const CliRun fit = run({"fit", "--concept", "a lot of fire"});
  ASSERT_EQ(fit.code, 0) << fit.err;
  const double r = json::parse(fit.out)["multiple_r"];
  EXPECT_GT(r, 0.0);
  EXPECT_LE(r, 1.0);
  const CliRun assoc = run({"associations", "--concept", "no water"});
  ASSERT_EQ(assoc.code, 0) << assoc.err;
  EXPECT_EQ(json::parse(assoc.out)["colors"].size(), 71u);
  EXPECT_EQ(run({"associations", "--concept", "nothing"}).code, 3);
}

TEST(Cli, ScaleAndStimulus) {
  const CliRun s = run({"scale", "--light", "21", "--dark", "1", "--concept", "ice"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(json::parse(s.out)["scale"]["hex"].size(), 10u);
  EXPECT_EQ(run({"scale", "--light", "lab:20:0:0", "--dark", "lab:80:0:0"}).code, 2);

  const CliRun a = run({"stimulus", "--light", "21", "--dark", "1", "--seed", "5"});
  const CliRun b = run({"stimulus", "--light", "21", "--dark", "1", "--seed", "5"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("<?xml", 0), 0u);
  EXPECT_EQ(run({"stimulus", "--light", "21", "--dark", "1", "--orientation", "up"}).code, 2);
}

TEST(Cli, WeightsSearch) {
  const CliRun r = run({"weights"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["surface"].size(), 21u);
}

TEST(Cli, PipelineWritesManifest) {
  const fs::path dir = temp_dir("pipeline");
  const CliRun r = run({"pipeline", "-o", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(dir / "manifest.json"));
  std::ifstream in(dir / "manifest.json");
  const json m = json::parse(in);
  std::vector<std::string> stages;
  for (const auto& s : m["stages"]) stages.push_back(s["stage"]);
  EXPECT_EQ(stages, (std::vector<std::string>{"fits", "pairs", "scales", "stimuli", "predictions",
                                              "weights"}));
  fs::remove_all(dir);
}

TEST(Cli, ConfigFileErrors) {
  EXPECT_EQ(run({"-c", "/nonexistent/config.json", "pairs", "--counts-only"}).code, 3);
  const fs::path dir = temp_dir("badconfig");
  std::ofstream(dir / "config.json") << R"({"palette": "missing.csv"})";
  EXPECT_EQ(run({"-c", (dir / "config.json").string(), "pairs", "--counts-only"}).code, 3);
  std::ofstream(dir / "config.json") << R"({"palette": )";
  EXPECT_NE(run({"-c", (dir / "config.json").string(), "pairs", "--counts-only"}).code, 0);
  fs::remove_all(dir);
}

TEST(Cli, DemoDataIsDeterministic) {
  const fs::path a = temp_dir("demo_a"), b = temp_dir("demo_b");
  ASSERT_EQ(run({"demo-data", "-o", a.string()}).code, 0);
  ASSERT_EQ(run({"demo-data", "-o", b.string()}).code, 0);
  for (const char* f : {"ratings.csv", "responses.csv", "scales.csv"}) {
    std::ifstream fa(a / f), fb(b / f);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    EXPECT_FALSE(sa.str().empty());
    EXPECT_EQ(sa.str(), sb.str()) << f;
  }
  fs::remove_all(a);
  fs::remove_all(b);
}
