#pragma once

// nlohmann::json bindings for the library's value types. Types used by the
// HTTP API also have from_json so responses can be parsed back.

#include <nlohmann/json.hpp>

#include "chroma_infer/associations.hpp"
#include "chroma_infer/color.hpp"
#include "chroma_infer/eval.hpp"
#include "chroma_infer/inference.hpp"
#include "chroma_infer/palette.hpp"
#include "chroma_infer/scales.hpp"
#include "chroma_infer/stimuli.hpp"

namespace chroma_infer::color {
void to_json(nlohmann::json& j, const XyYColor& c);
void from_json(const nlohmann::json& j, XyYColor& c);
void to_json(nlohmann::json& j, const LabColor& c);
void from_json(const nlohmann::json& j, LabColor& c);
void to_json(nlohmann::json& j, const LchColor& c);
void from_json(const nlohmann::json& j, LchColor& c);
void to_json(nlohmann::json& j, const Srgb8& c);
void to_json(nlohmann::json& j, const WhitePoint& wp);
void from_json(const nlohmann::json& j, WhitePoint& wp);
void to_json(nlohmann::json& j, const ColorScale& s);
/// Rebuilds the scale by interpolating the stored endpoints.
ColorScale scale_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const PaletteEntry& e);
}  // namespace chroma_infer::color

namespace chroma_infer::associations {
void to_json(nlohmann::json& j, const AssociationTable& t);
AssociationTable table_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const EndpointRatings& r);
void from_json(const nlohmann::json& j, AttentionCheckSpec& spec);
void to_json(nlohmann::json& j, const AttentionCheckSpec& spec);
}  // namespace chroma_infer::associations

namespace chroma_infer::inference {
void to_json(nlohmann::json& j, const MeritGraph2x2& m);
void from_json(const nlohmann::json& j, MeritGraph2x2& m);
void to_json(nlohmann::json& j, const WeightPair& w);
void from_json(const nlohmann::json& j, WeightPair& w);
void to_json(nlohmann::json& j, const PredictionResult& p);
void from_json(const nlohmann::json& j, PredictionResult& p);
void to_json(nlohmann::json& j, const SalienceEstimate& s);
void to_json(nlohmann::json& j, const AssignmentSolution& s);
}  // namespace chroma_infer::inference

namespace chroma_infer::scales {
void to_json(nlohmann::json& j, const RegressionFit& f);
void from_json(const nlohmann::json& j, RegressionFit& f);
void to_json(nlohmann::json& j, const MonotonicityReport& r);
void from_json(const nlohmann::json& j, MonotonicityReport& r);
void to_json(nlohmann::json& j, const PairConstraints& c);
void from_json(const nlohmann::json& j, PairConstraints& c);
void to_json(nlohmann::json& j, const CandidatePair& p);
void to_json(nlohmann::json& j, const FilterCounts& c);
void to_json(nlohmann::json& j, const PairSelection& s);
}  // namespace chroma_infer::scales

namespace chroma_infer::stimuli {
void to_json(nlohmann::json& j, const UnderlyingDataset& d);
void from_json(const nlohmann::json& j, UnderlyingDataset& d);
void to_json(nlohmann::json& j, const CurveParams& p);
void from_json(const nlohmann::json& j, CurveParams& p);
}  // namespace chroma_infer::stimuli

namespace chroma_infer::eval {
void to_json(nlohmann::json& j, const ScaleOutcome& o);
void to_json(nlohmann::json& j, const Correlation& c);
void to_json(nlohmann::json& j, const CorrelationComparison& c);
void to_json(nlohmann::json& j, const WeightSearchResult& r);
void to_json(nlohmann::json& j, const EvaluationTable& t);
}  // namespace chroma_infer::eval
