#pragma once

#include <chroma_infer/associations.hpp>
#include <chroma_infer/eval.hpp>
#include <chroma_infer/inference.hpp>
#include <chroma_infer/palette.hpp>
#include <chroma_infer/scales.hpp>
#include <chroma_infer/stimuli.hpp>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace chroma_infer::app {

/// A row of the scales file: a named scale for one domain concept.
struct ScaleSpec {
  std::string scale_id;
  std::string concept_name;
  associations::ColorRef light;
  associations::ColorRef dark;
};

/// Everything loaded from a config. Immutable after construction, so it can
/// be shared between server threads.
class Workspace {
 public:
  explicit Workspace(Config config);

  const Config& config() const { return config_; }
  const color::Palette& palette() const { return palette_; }
  const std::vector<associations::RatingRecord>& ratings() const { return ratings_; }
  const std::vector<std::string>& excluded_participants() const { return excluded_; }
  const std::vector<ScaleSpec>& scale_specs() const { return scale_specs_; }
  const std::vector<eval::ResponseRecord>& responses() const { return responses_; }

  /// Rated concepts other than the attention-check concept.
  std::vector<std::string> concepts() const;
  /// Domains X with both "a lot of X" and "no X" rated.
  std::vector<std::string> domains() const;

  bool has_table(const std::string& concept_name) const;
  /// Throws ErrorCode::lookup for an unknown concept.
  const associations::AssociationTable& table(const std::string& concept_name) const;
  /// Concepts whose regression could be fitted.
  const std::map<std::string, scales::ConceptModel>& models() const { return models_; }
  const scales::ConceptModel& model(const std::string& concept_name) const;

  color::LabColor resolve(const associations::ColorRef& ref) const;

  /// Darkness slider ratings recorded for this endpoint pair, if any.
  std::optional<inference::SalienceEstimate> rated_salience(
      const associations::ColorRef& light, const associations::ColorRef& dark) const;

 private:
  Config config_;
  color::Palette palette_;
  std::vector<associations::RatingRecord> ratings_;
  std::vector<std::string> excluded_;
  std::map<std::string, associations::AssociationTable> tables_;
  std::map<std::string, scales::ConceptModel> models_;
  std::vector<ScaleSpec> scale_specs_;
  std::vector<eval::ResponseRecord> responses_;
  std::map<std::pair<std::string, std::string>, std::vector<inference::DarknessRating>> darkness_;
};

/// Integer index, "lab:L:a:b" string, [L, a, b] array or {"L","a","b"} object.
associations::ColorRef color_ref_from_json(const nlohmann::json& j);

struct PredictQuery {
  std::optional<std::string> concept_name;
  std::optional<associations::ColorRef> light;
  std::optional<associations::ColorRef> dark;
  std::optional<inference::MeritGraph2x2> direct;
  /// Explicit relational merit graph; overrides salience.
  std::optional<inference::MeritGraph2x2> darkness;
  inference::WeightPair weights = inference::kDefaultWeights;
  std::optional<double> salience;
};

struct PredictAnswer {
  std::optional<associations::EndpointRatings> endpoints;
  inference::MeritGraph2x2 direct;
  inference::SalienceEstimate salience;
  inference::MeritGraph2x2 darkness;
  inference::WeightPair weights;
  inference::MeritGraph2x2 combined;
  inference::PredictionResult result;
};

PredictAnswer run_predict(const Workspace& ws, const PredictQuery& q);
PredictQuery predict_query_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PredictAnswer& a);

struct ScaleQuery {
  associations::ColorRef light;
  associations::ColorRef dark;
  /// A domain, a rated concept, or empty for every fitted concept.
  std::optional<std::string> concept_name;
};

struct ScaleAnswer {
  color::ColorScale scale;
  std::vector<scales::ConceptCheck> checks;
};

ScaleAnswer run_scale(const Workspace& ws, const ScaleQuery& q);
ScaleQuery scale_query_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScaleAnswer& a);

struct StimulusQuery {
  associations::ColorRef light;
  associations::ColorRef dark;
  std::uint64_t seed = 1;
  bool reversed = false;
  stimuli::Orientation orientation = stimuli::Orientation::more_is_dark_end;
  bool axis_labels = true;
};

struct StimulusAnswer {
  stimuli::UnderlyingDataset dataset;
  stimuli::SvgStimulus stimulus;
};

StimulusAnswer run_stimulus(const Workspace& ws, const StimulusQuery& q);
StimulusQuery stimulus_query_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StimulusAnswer& a);

/// Merit graphs for every configured scale, in scale-file order.
std::vector<eval::ScaleCase> scale_cases(const Workspace& ws);

}  // namespace chroma_infer::app
