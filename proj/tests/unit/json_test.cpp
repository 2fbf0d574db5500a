#include <gtest/gtest.h>

#include <chroma_infer/error.hpp>
#include <chroma_infer/json.hpp>

using namespace chroma_infer;
using nlohmann::json;

TEST(Json, ColorsRoundTrip) {
  const color::LabColor lab{50, 28.891, -73.589};
  EXPECT_EQ(json(lab).get<color::LabColor>(), lab);
  EXPECT_EQ(json::parse("[50, 28.891, -73.589]").get<color::LabColor>(), lab);
  const auto lch = json::parse(R"({"L": 50, "C": 79.057, "h": 291.435})").get<color::LchColor>();
  EXPECT_DOUBLE_EQ(lch.h, 291.435);
  const auto xyy = json(color::XyYColor{0.3, 0.4, 20}).get<color::XyYColor>();
  EXPECT_DOUBLE_EQ(xyy.Y, 20);
  const auto wp = json::parse(R"({"x": 0.313, "y": 0.329})").get<color::WhitePoint>();
  EXPECT_DOUBLE_EQ(wp.Y, 100);
  const json s = color::lab_to_srgb({50, 0, 0});
  EXPECT_EQ(s["hex"], "#777777");
  EXPECT_EQ(s["r"], 119);
}

TEST(Json, ScaleRoundTrip) {
  color::ColorScale s = color::interpolate_scale({88, 0, 10}, {50, 20, -30});
  s.light_index = 4;
  const json j = s;
  EXPECT_EQ(j["steps"].size(), 10u);
  EXPECT_EQ(j["hex"].size(), 10u);
  EXPECT_DOUBLE_EQ(j["lightness_delta"].get<double>(), 38.0);
  EXPECT_TRUE(j["dark_index"].is_null());
  const color::ColorScale back = color::scale_from_json(j);
  EXPECT_EQ(back.steps(), s.steps());
  EXPECT_EQ(back.light_index, 4);
  EXPECT_FALSE(back.dark_index.has_value());
  json bad = j;
  bad["steps"].erase(0);
  EXPECT_THROW(color::scale_from_json(bad), Error);
}

TEST(Json, AssociationTableRoundTrip) {
  associations::AssociationTable t;
  t.concept_name = "a lot of fire";
  t.n_participants = 3;
  t.colors[5] = {0.4, 0.1, 3};
  t.colors[color::LabColor{60, 1.5, -2}] = {0.7, 0.05, 3};
  const json j = t;
  EXPECT_EQ(j["concept"], "a lot of fire");
  const auto back = associations::table_from_json(j);
  EXPECT_EQ(back.n_participants, 3u);
  EXPECT_DOUBLE_EQ(back.mean(5), 0.4);
  EXPECT_DOUBLE_EQ(back.mean(color::LabColor{60, 1.5, -2}), 0.7);
}

TEST(Json, AttentionSpec) {
  const auto spec = json::parse(R"({"strong_colors":[1,2,3,4,5,6],"weak_colors":[7,8,9,10,11,12]})")
                        .get<associations::AttentionCheckSpec>();
  EXPECT_EQ(spec.concept_name, "celery");
  EXPECT_EQ(spec.min_pass, 5);
  EXPECT_THROW(
      json::parse(R"({"strong_colors":[1,2,3,4,5,6],"weak_colors":[6,8,9,10,11,12]})")
          .get<associations::AttentionCheckSpec>(),
      Error);
}

TEST(Json, InferenceTypes) {
  const inference::MeritGraph2x2 m{0.8, 0.2, 0.7, 0.3};
  EXPECT_EQ(json(m).get<inference::MeritGraph2x2>(), m);
  EXPECT_EQ(json::parse("[0.8, 0.2, 0.7, 0.3]").get<inference::MeritGraph2x2>(), m);
  EXPECT_THROW(json::parse("[0.8, 0.2]").get<inference::MeritGraph2x2>(), Error);
  const inference::WeightPair w{0.7, 0.3};
  EXPECT_EQ(json(w).get<inference::WeightPair>(), w);
  EXPECT_THROW(json::parse(R"({"wa":0.7,"wd":0.7})").get<inference::WeightPair>(), Error);
  const auto p = inference::predict(m, inference::darkness_merit(1), w);
  const auto back = json(p).get<inference::PredictionResult>();
  EXPECT_EQ(back.assignment, p.assignment);
  EXPECT_DOUBLE_EQ(back.signed_s, p.signed_s);
  EXPECT_DOUBLE_EQ(back.p_dark_more, p.p_dark_more);
  EXPECT_EQ(json(p)["assignment"], "dark_more");
}

TEST(Json, RegressionFitRoundTrip) {
  scales::RegressionFit f;
  f.slopes = {0.01, 0.002, -0.1, 0.05, 0.02, -0.03};
  f.intercept = 0.2;
  f.standard_errors = {1, 2, 3, 4, 5, 6, 7};
  f.multiple_r = 0.81;
  f.residuals = {0.1, -0.1};
  f.hue_units = scales::HueUnits::legacy_radians;
  const json j = f;
  EXPECT_DOUBLE_EQ(j["slopes"]["sin_2h"].get<double>(), 0.02);
  EXPECT_DOUBLE_EQ(j["standard_errors"]["intercept"].get<double>(), 7);
  const auto back = j.get<scales::RegressionFit>();
  EXPECT_EQ(back.slopes, f.slopes);
  EXPECT_EQ(back.standard_errors, f.standard_errors);
  EXPECT_EQ(back.residuals, f.residuals);
  EXPECT_EQ(back.hue_units, f.hue_units);
}

TEST(Json, MonotonicityAndConstraints) {
  scales::MonotonicityReport r;
  r.r_squared = 0.9;
  r.pass = true;
  r.predicted[3] = 0.25;
  const auto back = json(r).get<scales::MonotonicityReport>();
  EXPECT_EQ(back.predicted, r.predicted);
  EXPECT_TRUE(back.pass);

  scales::PairConstraints c;
  c.association_difference_bins = {-0.2, 0.2};
  const auto cb = json(c).get<scales::PairConstraints>();
  EXPECT_EQ(cb.association_difference_bins, c.association_difference_bins);
  EXPECT_EQ(cb.allowed_lightness_deltas, c.allowed_lightness_deltas);
  EXPECT_THROW(json::parse(R"({"association_difference_bins":[1,0]})").get<scales::PairConstraints>(),
               Error);
}

TEST(Json, DatasetRoundTrip) {
  const auto d = stimuli::generate_underlying_data(3, true);
  const auto back = json(d).get<stimuli::UnderlyingDataset>();
  EXPECT_EQ(back.values, d.values);
  EXPECT_EQ(back.seed, 3u);
  EXPECT_TRUE(back.reversed);
  json bad = d;
  bad["values"][0][0] = 1.5;
  EXPECT_THROW(bad.get<stimuli::UnderlyingDataset>(), Error);
  bad = d;
  bad["values"].erase(0);
  EXPECT_THROW(bad.get<stimuli::UnderlyingDataset>(), Error);
  const auto p = json::parse(R"({"noise_sd": 0.1})").get<stimuli::CurveParams>();
  EXPECT_DOUBLE_EQ(p.center, 4.5);
  EXPECT_DOUBLE_EQ(p.noise_sd, 0.1);
}

TEST(Json, EvalTypes) {
  const json c = eval::compare_correlations(1.0, 10, 0.5, 10);
  EXPECT_TRUE(c["z"].is_null());
  EXPECT_TRUE(c["infinite"].get<bool>());
  const json o = eval::ScaleOutcome{"s", "fire", 0.75, 0.1, 4};
  EXPECT_DOUBLE_EQ(o["scaled_response"].get<double>(), 0.5);
  EXPECT_EQ(o["concept"], "fire");
}
