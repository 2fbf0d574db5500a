#include "config.hpp"

#include <chroma_infer/error.hpp>
#include <chroma_infer/eval.hpp>
#include <chroma_infer/json.hpp>
#include <cstdlib>
#include <fstream>

#ifndef CHROMA_INFER_DEFAULT_DATA_DIR
#define CHROMA_INFER_DEFAULT_DATA_DIR "data"
#endif

namespace chroma_infer::app {

void Config::validate() const {
  auto require = [](const fs::path& p, const char* what) {
    if (!fs::is_regular_file(p)) {
      throw Error(ErrorCode::io, std::string(what) + " file not found: " + p.string());
    }
  };
  require(palette, "palette");
  if (ratings) require(*ratings, "ratings");
  if (responses) require(*responses, "responses");
  if (scales) require(*scales, "scales");
  if (darkness) require(*darkness, "darkness");
  eval::weight_grid(grid_increment);
  pair_constraints.validate();
  if (attention_check) attention_check->validate();
}

fs::path data_dir() {
  if (const char* env = std::getenv("CHROMA_INFER_DATA"); env && *env) return env;
  return CHROMA_INFER_DEFAULT_DATA_DIR;
}

Config load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path q(p);
    return q.is_absolute() ? q : base / q;
  };
  auto optional_path = [&](const char* key) -> std::optional<fs::path> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return resolve(j[key].get<std::string>());
  };

  Config c;
  try {
    c.palette = j.contains("palette") ? resolve(j["palette"].get<std::string>())
                                      : data_dir() / "uw71.csv";
    c.ratings = optional_path("ratings");
    c.responses = optional_path("responses");
    c.scales = optional_path("scales");
    c.darkness = optional_path("darkness");
    if (j.contains("white_point")) c.white_point = j["white_point"].get<color::WhitePoint>();
    if (j.contains("curve")) c.curve = j["curve"].get<stimuli::CurveParams>();
    c.grid_increment = j.value("grid_increment", c.grid_increment);
    c.seed = j.value("seed", c.seed);
    c.output_dir = resolve(j.value("output_dir", std::string("out")));
    if (j.contains("pair_constraints")) {
      c.pair_constraints = j["pair_constraints"].get<scales::PairConstraints>();
    }
    if (j.contains("attention_check") && !j["attention_check"].is_null()) {
      c.attention_check = j["attention_check"].get<associations::AttentionCheckSpec>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
  c.validate();
  return c;
}

Config default_config() {
  const fs::path demo = data_dir() / "demo" / "config.json";
  if (fs::is_regular_file(demo)) return load_config(demo);
  Config c;
  c.palette = data_dir() / "uw71.csv";
  c.validate();
  return c;
}

}  // namespace chroma_infer::app
