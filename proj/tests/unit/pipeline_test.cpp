#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "pipeline.hpp"

using namespace chroma_infer;
using namespace chroma_infer::app;
using nlohmann::json;

namespace {

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[fs::relative(e.path(), dir).generic_string()] = ss.str();
  }
  return files;
}

fs::path fresh(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("chroma_infer_pipeline_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Pipeline, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Pipeline, ByteIdenticalAcrossRuns) {
  const Workspace ws(default_config());
  const fs::path a = fresh("a"), b = fresh("b");
  const PipelineReport ra = run_pipeline(ws, a);
  const PipelineReport rb = run_pipeline(Workspace(default_config()), b);
  const auto sa = snapshot(a), sb = snapshot(b);
  ASSERT_FALSE(sa.empty());
  EXPECT_EQ(sa.size(), sb.size());
  for (const auto& [path, bytes] : sa) {
    ASSERT_TRUE(sb.contains(path)) << path;
    EXPECT_TRUE(bytes == sb.at(path)) << path;
  }
  EXPECT_EQ(to_json(ra)["stages"], to_json(rb)["stages"]);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Pipeline, ManifestMatchesFiles) {
  const Workspace ws(default_config());
  const fs::path dir = fresh("manifest");
  const PipelineReport r = run_pipeline(ws, dir);
  const auto files = snapshot(dir);
  std::size_t listed = 0;
  for (const auto& stage : r.stages) {
    EXPECT_FALSE(stage.files.empty()) << stage.stage;
    for (const auto& f : stage.files) {
      ++listed;
      ASSERT_TRUE(files.contains(f.path)) << f.path;
      EXPECT_EQ(files.at(f.path).size(), f.bytes);
      EXPECT_EQ(fnv1a_hex(files.at(f.path)), f.fnv1a);
    }
  }
  EXPECT_EQ(listed + 1, files.size());
  EXPECT_TRUE(files.contains("manifest.json"));
  EXPECT_TRUE(files.contains("weight_surface.csv"));
  EXPECT_TRUE(files.contains("stimuli/fire-01/0.svg"));
  fs::remove_all(dir);
}

TEST(Pipeline, SeedChangesStimuli) {
  Config c = default_config();
  const fs::path a = fresh("seed_a"), b = fresh("seed_b");
  run_pipeline(Workspace(c), a);
  c.seed += 1;
  run_pipeline(Workspace(c), b);
  const auto sa = snapshot(a), sb = snapshot(b);
  EXPECT_NE(sa.at("stimuli/fire-01/0.svg"), sb.at("stimuli/fire-01/0.svg"));
  EXPECT_EQ(sa.at("fits.json"), sb.at("fits.json"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Pipeline, DemoRecoversPlantedWeights) {
  const Workspace ws(default_config());
  const fs::path dir = fresh("weights");
  run_pipeline(ws, dir);
  std::ifstream in(dir / "weights.json");
  const json w = json::parse(in);
  EXPECT_NEAR(w["search"]["best"]["wa"].get<double>(), 0.7, 0.05 + 1e-9);
  fs::remove_all(dir);
}
