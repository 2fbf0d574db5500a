#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chroma_infer/inference.hpp"

namespace chroma_infer::eval {

/// One colormap judgement. The participant chose the darker side when their
/// left/right choice agrees with the side the dark region was on.
struct ResponseRecord {
  std::string participant_id;
  std::string concept_name;
  std::string scale_id;
  int trial = 1;
  bool chose_left = false;
  bool left_was_dark = false;

  bool chose_dark() const { return chose_left == left_was_dark; }
};

/// Reads `participant_id,concept,scale_id,trial,chose_left,left_was_dark`.
std::vector<ResponseRecord> read_responses_csv(std::istream& in,
                                               std::string_view source = "<stream>");
std::vector<ResponseRecord> load_responses_csv(const std::string& path);

struct ScaleOutcome {
  std::string scale_id;
  std::string concept_name;
  double p_dark = 0.0;
  double sem = 0.0;
  std::size_t n_participants = 0;

  /// 2 * p_dark - 1, on the scale of signed semantic distance.
  double scaled_response() const { return 2.0 * p_dark - 1.0; }
};

/// Per-participant mean over trials, then mean and SEM over participants.
/// Sorted by scale id.
std::vector<ScaleOutcome> scale_outcomes(std::span<const ResponseRecord> records);

double mse(std::span<const double> predictions, std::span<const double> targets);

/// Predictions keyed by scale id against outcomes; every outcome needs a
/// prediction and vice versa (ErrorCode::alignment).
double mse(const std::map<std::string, double>& predictions,
           std::span<const ScaleOutcome> outcomes);

struct Correlation {
  double r = 0.0;
  /// Two-sided, from t = r * sqrt((n - 2) / (1 - r^2)) with n - 2 df.
  double p = 1.0;
  std::size_t n = 0;
};

/// Throws ErrorCode::validation for n < 3 and ErrorCode::undefined_correlation
/// for zero variance.
Correlation pearson_r(std::span<const double> xs, std::span<const double> ys);

struct CorrelationComparison {
  double z = 0.0;
  double p = 1.0;
  /// One of the correlations was +-1 so its Fisher transform is infinite.
  bool infinite = false;
};

/// Fisher r-to-z test for two independent correlations.
CorrelationComparison compare_correlations(double r1, std::size_t n1, double r2, std::size_t n2);

struct Split {
  std::map<std::string, std::vector<std::string>> train;  // scale id -> participants
  std::map<std::string, std::vector<std::string>> test;

  std::vector<ResponseRecord> train_records(std::span<const ResponseRecord> records) const;
  std::vector<ResponseRecord> test_records(std::span<const ResponseRecord> records) const;
};

/// Seeded per-scale halving of participants; odd counts give train the extra
/// participant. Participants must belong to exactly one scale.
Split train_test_split(std::span<const ResponseRecord> records, std::uint64_t seed);

/// Merit sources for one color scale.
struct ScaleCase {
  std::string scale_id;
  std::string concept_name;
  inference::MeritGraph2x2 direct;
  inference::MeritGraph2x2 darkness;
};

/// Weight pairs (k * increment, 1 - k * increment), k = 0 .. 1/increment.
std::vector<inference::WeightPair> weight_grid(double increment = 0.05);

struct SurfacePoint {
  inference::WeightPair weights;
  std::map<std::string, double> concept_mse;
  double mean_mse = 0.0;
};

struct WeightSearchResult {
  std::vector<SurfacePoint> surface;  // grid order, ascending wa
  inference::WeightPair best;
  double best_mse = 0.0;
};

/// Signed semantic distance per scale id for one weighting.
std::map<std::string, double> signed_distances(std::span<const ScaleCase> cases,
                                               const inference::WeightPair& w);

/// MSE per concept (mean over that concept's scales) for one weighting.
std::map<std::string, double> concept_mse(std::span<const ScaleCase> cases,
                                          std::span<const ScaleOutcome> outcomes,
                                          const inference::WeightPair& w);

/// Evaluates every grid pair; best minimizes the mean over concepts of the
/// per-concept MSE. Ties go to the larger wa.
WeightSearchResult grid_search_weights(std::span<const ScaleCase> cases,
                                       std::span<const ScaleOutcome> outcomes,
                                       double increment = 0.05);

struct NamedWeighting {
  std::string label;
  inference::WeightPair weights;
};

struct ScaleError {
  std::string scale_id;
  std::string concept_name;
  std::string weighting;
  double signed_s = 0.0;
  double scaled_response = 0.0;
  double squared_error = 0.0;
};

struct WeightingSummary {
  std::string weighting;
  std::string concept_name;  // "all" for the across-concept row
  double mean_mse = 0.0;
  double sem = 0.0;
  std::size_t n_scales = 0;
};

struct EvaluationTable {
  std::vector<ScaleError> rows;
  std::vector<WeightingSummary> summaries;

  /// Summary row for (weighting, concept); throws ErrorCode::lookup.
  const WeightingSummary& summary(std::string_view weighting, std::string_view concept_name) const;
};

EvaluationTable evaluate_weightings(std::span<const ScaleCase> cases,
                                    std::span<const ScaleOutcome> outcomes,
                                    std::span<const NamedWeighting> weightings);

/// The best pair from training plus the two single-source weightings.
std::vector<NamedWeighting> standard_weightings(const inference::WeightPair& best);

}  // namespace chroma_infer::eval
