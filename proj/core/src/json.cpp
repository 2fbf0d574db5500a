#include "chroma_infer/json.hpp"

#include "chroma_infer/error.hpp"

using nlohmann::json;

namespace chroma_infer::color {

void to_json(json& j, const XyYColor& c) { j = {{"x", c.x}, {"y", c.y}, {"Y", c.Y}}; }
void from_json(const json& j, XyYColor& c) {
  if (j.is_array()) {
    c = {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
    return;
  }
  c = {j.at("x").get<double>(), j.at("y").get<double>(), j.at("Y").get<double>()};
}

void to_json(json& j, const LabColor& c) { j = {{"L", c.L}, {"a", c.a}, {"b", c.b}}; }
void from_json(const json& j, LabColor& c) {
  if (j.is_array()) {
    c = {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
    return;
  }
  c = {j.at("L").get<double>(), j.at("a").get<double>(), j.at("b").get<double>()};
}

void to_json(json& j, const LchColor& c) { j = {{"L", c.L}, {"C", c.C}, {"h", c.h}}; }
void from_json(const json& j, LchColor& c) {
  if (j.is_array()) {
    c = {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
    return;
  }
  c = {j.at("L").get<double>(), j.at("C").get<double>(), j.at("h").get<double>()};
}

void to_json(json& j, const Srgb8& c) {
  j = {{"r", c.r}, {"g", c.g}, {"b", c.b}, {"hex", c.hex()}, {"clipped", c.clipped}};
}

void to_json(json& j, const WhitePoint& wp) { j = {{"x", wp.x}, {"y", wp.y}, {"Y", wp.Y}}; }
void from_json(const json& j, WhitePoint& wp) {
  wp.x = j.at("x").get<double>();
  wp.y = j.at("y").get<double>();
  wp.Y = j.value("Y", 100.0);
}

void to_json(json& j, const ColorScale& s) {
  j = json::object();
  j["steps"] = s.steps();
  json hex = json::array();
  for (const auto& step : s.steps()) hex.push_back(lab_to_srgb(step).hex());
  j["hex"] = hex;
  j["lightness_delta"] = s.lightness_delta();
  j["light_index"] = s.light_index ? json(*s.light_index) : json(nullptr);
  j["dark_index"] = s.dark_index ? json(*s.dark_index) : json(nullptr);
}

ColorScale scale_from_json(const json& j) {
  const auto& steps = j.at("steps");
  if (!steps.is_array() || steps.size() != kScaleSteps) {
    throw Error(ErrorCode::shape, "a color scale has exactly 10 steps");
  }
  ColorScale s = interpolate_scale(steps.front().get<LabColor>(), steps.back().get<LabColor>());
  if (j.contains("light_index") && !j["light_index"].is_null()) s.light_index = j["light_index"];
  if (j.contains("dark_index") && !j["dark_index"].is_null()) s.dark_index = j["dark_index"];
  return s;
}

void to_json(json& j, const PaletteEntry& e) {
  j = {{"index", e.index}, {"xyY", e.xyy}, {"lab", e.lab}, {"lch", e.lch},
       {"srgb", lab_to_srgb(e.lab)}};
}

}  // namespace chroma_infer::color

namespace chroma_infer::associations {

void to_json(json& j, const AssociationTable& t) {
  json colors = json::array();
  for (const auto& [ref, stats] : t.colors) {
    colors.push_back(
        {{"color", to_string(ref)}, {"mean", stats.mean}, {"sem", stats.sem}, {"n", stats.n}});
  }
  j = {{"concept", t.concept_name}, {"n_participants", t.n_participants}, {"colors", colors}};
}

AssociationTable table_from_json(const json& j) {
  AssociationTable t;
  t.concept_name = j.at("concept").get<std::string>();
  t.n_participants = j.at("n_participants").get<std::size_t>();
  for (const auto& c : j.at("colors")) {
    t.colors[parse_color_ref(c.at("color").get<std::string>())] = {
        c.at("mean").get<double>(), c.at("sem").get<double>(), c.at("n").get<std::size_t>()};
  }
  return t;
}

void to_json(json& j, const EndpointRatings& r) {
  j = {{"concept", r.concept_name},       {"dark_more", r.dark_more},   {"dark_less", r.dark_less},
       {"light_more", r.light_more}, {"light_less", r.light_less}};
}

void from_json(const json& j, AttentionCheckSpec& spec) {
  spec.concept_name = j.value("concept", spec.concept_name);
  if (j.contains("strong_colors")) spec.strong_colors = j["strong_colors"].get<std::array<int, 6>>();
  if (j.contains("weak_colors")) spec.weak_colors = j["weak_colors"].get<std::array<int, 6>>();
  spec.threshold = j.value("threshold", spec.threshold);
  spec.min_pass = j.value("min_pass", spec.min_pass);
  spec.validate();
}

void to_json(json& j, const AttentionCheckSpec& spec) {
  j = {{"concept", spec.concept_name},
       {"strong_colors", spec.strong_colors},
       {"weak_colors", spec.weak_colors},
       {"threshold", spec.threshold},
       {"min_pass", spec.min_pass}};
}

}  // namespace chroma_infer::associations

namespace chroma_infer::inference {

void to_json(json& j, const MeritGraph2x2& m) {
  j = {{"x1", m.x1}, {"x2", m.x2}, {"x3", m.x3}, {"x4", m.x4}};
}
void from_json(const json& j, MeritGraph2x2& m) {
  if (j.is_array()) {
    if (j.size() != 4) throw Error(ErrorCode::shape, "a merit graph has 4 edges");
    m = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
    return;
  }
  m = {j.at("x1").get<double>(), j.at("x2").get<double>(), j.at("x3").get<double>(),
       j.at("x4").get<double>()};
}

void to_json(json& j, const WeightPair& w) { j = {{"wa", w.wa}, {"wd", w.wd}}; }
void from_json(const json& j, WeightPair& w) {
  w = WeightPair::make(j.at("wa").get<double>(), j.at("wd").get<double>());
}

void to_json(json& j, const PredictionResult& p) {
  j = {{"assignment", to_string(p.assignment)},
       {"delta_s", p.delta_s},
       {"signed_s", p.signed_s},
       {"p_dark_more", p.p_dark_more}};
}
void from_json(const json& j, PredictionResult& p) {
  p.assignment = parse_assignment(j.at("assignment").get<std::string>());
  p.delta_s = j.at("delta_s").get<double>();
  p.signed_s = j.at("signed_s").get<double>();
  p.p_dark_more = j.at("p_dark_more").get<double>();
}

void to_json(json& j, const SalienceEstimate& s) {
  j = {{"salience", s.salience},
       {"ordering_conflict", s.ordering_conflict},
       {"from_ratings", s.from_ratings}};
}

void to_json(json& j, const AssignmentSolution& s) {
  j = {{"permutation", s.permutation}, {"total_merit", s.total_merit}};
}

}  // namespace chroma_infer::inference

namespace chroma_infer::scales {

namespace {

std::string_view units_name(HueUnits u) {
  return u == HueUnits::degrees ? "degrees" : "legacy_radians";
}

}  // namespace

void to_json(json& j, const RegressionFit& f) {
  json slopes = json::object();
  json se = json::object();
  for (std::size_t i = 0; i < 6; ++i) slopes[std::string(kPredictorNames[i])] = f.slopes[i];
  for (std::size_t i = 0; i < kPredictors; ++i) {
    se[std::string(kPredictorNames[i])] = f.standard_errors[i];
  }
  j = {{"slopes", slopes},         {"intercept", f.intercept},
       {"standard_errors", se},    {"multiple_r", f.multiple_r},
       {"residuals", f.residuals}, {"hue_units", units_name(f.hue_units)}};
}

void from_json(const json& j, RegressionFit& f) {
  const auto& slopes = j.at("slopes");
  for (std::size_t i = 0; i < 6; ++i) {
    f.slopes[i] = slopes.at(std::string(kPredictorNames[i])).get<double>();
  }
  f.intercept = j.at("intercept").get<double>();
  if (j.contains("standard_errors")) {
    const auto& se = j["standard_errors"];
    for (std::size_t i = 0; i < kPredictors; ++i) {
      f.standard_errors[i] = se.value(std::string(kPredictorNames[i]), 0.0);
    }
  }
  f.multiple_r = j.value("multiple_r", 0.0);
  f.residuals = j.value("residuals", std::vector<double>{});
  const std::string units = j.value("hue_units", std::string("degrees"));
  if (units == "degrees") {
    f.hue_units = HueUnits::degrees;
  } else if (units == "legacy_radians") {
    f.hue_units = HueUnits::legacy_radians;
  } else {
    throw Error(ErrorCode::parse, "unknown hue_units '" + units + "'");
  }
}

void to_json(json& j, const MonotonicityReport& r) {
  j = {{"r_squared", r.r_squared},
       {"pass", r.pass},
       {"degenerate", r.degenerate},
       {"predicted", r.predicted}};
}
void from_json(const json& j, MonotonicityReport& r) {
  r.r_squared = j.at("r_squared").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.degenerate = j.value("degenerate", false);
  r.predicted = j.at("predicted").get<std::array<double, color::kScaleSteps>>();
}

void to_json(json& j, const PairConstraints& c) {
  j = {{"allowed_lightness_deltas", c.allowed_lightness_deltas},
       {"lightness_tolerance", c.lightness_tolerance},
       {"min_lightness_delta", c.min_lightness_delta},
       {"exclude_black_white", c.exclude_black_white},
       {"association_difference_bins", c.association_difference_bins},
       {"monotonicity_threshold", c.monotonicity_threshold}};
}
void from_json(const json& j, PairConstraints& c) {
  c.allowed_lightness_deltas = j.value("allowed_lightness_deltas", c.allowed_lightness_deltas);
  c.lightness_tolerance = j.value("lightness_tolerance", c.lightness_tolerance);
  c.min_lightness_delta = j.value("min_lightness_delta", c.min_lightness_delta);
  c.exclude_black_white = j.value("exclude_black_white", c.exclude_black_white);
  c.association_difference_bins =
      j.value("association_difference_bins", c.association_difference_bins);
  c.monotonicity_threshold = j.value("monotonicity_threshold", c.monotonicity_threshold);
  c.validate();
}

void to_json(json& j, const CandidatePair& p) {
  json checks = json::array();
  for (const auto& c : p.checks) {
    checks.push_back({{"concept", c.concept_name},
                      {"association_difference", c.association_difference},
                      {"r_squared", c.monotonicity.r_squared},
                      {"pass", c.monotonicity.pass}});
  }
  j = {{"light_index", p.light_index},
       {"dark_index", p.dark_index},
       {"lightness_delta", p.lightness_delta},
       {"checks", checks},
       {"pass", p.pass},
       {"bin", p.bin ? json(*p.bin) : json(nullptr)}};
}

void to_json(json& j, const FilterCounts& c) {
  j = {{"total_pairs", c.total_pairs},
       {"equal_lightness", c.equal_lightness},
       {"small_lightness_difference", c.small_lightness_difference},
       {"black_white", c.black_white},
       {"lightness_delta_not_allowed", c.lightness_delta_not_allowed},
       {"monotonicity_failed", c.monotonicity_failed},
       {"passing", c.passing}};
}

void to_json(json& j, const PairSelection& s) {
  j = {{"counts", s.counts}, {"candidates", s.candidates}};
}

}  // namespace chroma_infer::scales

namespace chroma_infer::stimuli {

void to_json(json& j, const UnderlyingDataset& d) {
  j = {{"seed", d.seed}, {"reversed", d.reversed}, {"values", d.values}};
}
void from_json(const json& j, UnderlyingDataset& d) {
  d.seed = j.at("seed").get<std::uint64_t>();
  d.reversed = j.at("reversed").get<bool>();
  const auto& values = j.at("values");
  if (!values.is_array() || values.size() != kGridSize) {
    throw Error(ErrorCode::shape, "dataset values must be an 8x8 array");
  }
  for (std::size_t r = 0; r < kGridSize; ++r) {
    if (!values[r].is_array() || values[r].size() != kGridSize) {
      throw Error(ErrorCode::shape, "dataset values must be an 8x8 array");
    }
    for (std::size_t c = 0; c < kGridSize; ++c) {
      const double v = values[r][c].get<double>();
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::validation, "dataset values must lie in [0, 1]");
      }
      d.values[r][c] = v;
    }
  }
}

void to_json(json& j, const CurveParams& p) {
  j = {{"steepness", p.steepness}, {"center", p.center}, {"noise_sd", p.noise_sd}};
}
void from_json(const json& j, CurveParams& p) {
  p.steepness = j.value("steepness", p.steepness);
  p.center = j.value("center", p.center);
  p.noise_sd = j.value("noise_sd", p.noise_sd);
  if (!(p.noise_sd >= 0.0)) throw Error(ErrorCode::validation, "noise_sd must be >= 0");
}

}  // namespace chroma_infer::stimuli

namespace chroma_infer::eval {

void to_json(json& j, const ScaleOutcome& o) {
  j = {{"scale_id", o.scale_id},
       {"concept", o.concept_name},
       {"p_dark", o.p_dark},
       {"sem", o.sem},
       {"n_participants", o.n_participants},
       {"scaled_response", o.scaled_response()}};
}

void to_json(json& j, const Correlation& c) { j = {{"r", c.r}, {"p", c.p}, {"n", c.n}}; }

void to_json(json& j, const CorrelationComparison& c) {
  j = {{"z", c.infinite ? json(nullptr) : json(c.z)}, {"p", c.p}, {"infinite", c.infinite}};
}

void to_json(json& j, const WeightSearchResult& r) {
  json surface = json::array();
  for (const auto& p : r.surface) {
    surface.push_back({{"wa", p.weights.wa},
                       {"wd", p.weights.wd},
                       {"concept_mse", p.concept_mse},
                       {"mean_mse", p.mean_mse}});
  }
  j = {{"best", r.best}, {"best_mse", r.best_mse}, {"surface", surface}};
}

void to_json(json& j, const EvaluationTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"scale_id", r.scale_id},
                    {"concept", r.concept_name},
                    {"weighting", r.weighting},
                    {"signed_s", r.signed_s},
                    {"scaled_response", r.scaled_response},
                    {"squared_error", r.squared_error}});
  }
  json summaries = json::array();
  for (const auto& s : t.summaries) {
    summaries.push_back({{"weighting", s.weighting},
                         {"concept", s.concept_name},
                         {"mean_mse", s.mean_mse},
                         {"sem", s.sem},
                         {"n_scales", s.n_scales}});
  }
  j = {{"rows", rows}, {"summaries", summaries}};
}

}  // namespace chroma_infer::eval
