#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chroma_infer/associations.hpp"

namespace chroma_infer::inference {

/// Merit on the four edges between two endpoint colors and two endpoint
/// concepts ("more" and "less"):
///   x1 = merit(dark, more)   x2 = merit(light, more)
///   x3 = merit(light, less)  x4 = merit(dark, less)
/// The dark-more assignment uses edges x1 and x3, light-more uses x2 and x4.
struct MeritGraph2x2 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;

  std::array<double, 4> edges() const { return {x1, x2, x3, x4}; }
  /// Throws ErrorCode::validation unless every edge is finite and in [0, 1].
  void validate() const;

  friend bool operator==(const MeritGraph2x2&, const MeritGraph2x2&) = default;
};

/// Relabels the colors: dark becomes light and vice versa.
MeritGraph2x2 swap_colors(const MeritGraph2x2& m);

/// Edge standard deviation model 1.4 * x * (1 - x).
double edge_sigma(double mean_merit);

struct EdgeUncertainty {
  std::array<double, 4> sigma{};
};

EdgeUncertainty uncertainty(const MeritGraph2x2& m);

/// Standard normal CDF.
double normal_cdf(double z);

/// E[dx] where dx = x1 - x2 + x3 - x4.
double mean_delta_x(const MeritGraph2x2& m);

/// P(dx > 0) under independent normal edges. With every sigma zero the
/// deterministic limit is returned: 1, 0, or 0.5 for a zero mean.
double prob_delta_positive(const MeritGraph2x2& m);

/// |P(dx > 0) - P(dx < 0)| in [0, 1].
double semantic_distance(const MeritGraph2x2& m);

enum class Assignment { dark_more, light_more };

std::string_view to_string(Assignment a);
Assignment parse_assignment(std::string_view text);

/// Sign rule on E[dx]; a tie resolves to dark_more.
Assignment optimal_assignment_2x2(const MeritGraph2x2& m);

/// +semantic_distance for dark_more, -semantic_distance for light_more.
double signed_semantic_distance(const MeritGraph2x2& m);

/// Square merit matrix; rows are items (colors), columns are targets (concepts).
using MeritMatrix = std::vector<std::vector<double>>;

struct AssignmentSolution {
  /// permutation[row] = assigned column.
  std::vector<std::size_t> permutation;
  double total_merit = 0.0;
};

/// Maximum-merit perfect matching (Kuhn-Munkres). Among optimal matchings
/// the lexicographically smallest permutation is returned. Throws
/// ErrorCode::shape for non-square input and ErrorCode::invalid_input for
/// non-finite entries.
AssignmentSolution optimal_assignment_n(const MeritMatrix& merit);

/// Dark-more edges (x1, x3) carry the salience, light-more edges carry 0.
MeritGraph2x2 darkness_merit(double salience);

/// One slider judgement of which endpoint looks darker. `slider` runs from
/// -half_range ("left color is clearly darker") through 0 ("equal darkness")
/// to +half_range ("right color is clearly darker"). `darker_on_left` tells
/// whether the endpoint with lower L* was shown on the left.
struct DarknessRating {
  std::string rater_id;
  double slider = 0.0;
  bool darker_on_left = true;
};

struct SalienceEstimate {
  double salience = 0.0;
  /// Raters judged the higher-L* endpoint to be darker on average.
  bool ordering_conflict = false;
  bool from_ratings = false;
};

/// Averages each rater's presentations, then raters, and normalizes the
/// magnitude by the half range (clamped to [0, 1]).
SalienceEstimate darkness_salience(std::span<const DarknessRating> ratings,
                                   double half_range = 1.0);

inline constexpr double kReferenceLightnessDelta = 38.0;

/// Fallback without ratings: clamp(delta_l / reference, 0, 1).
SalienceEstimate darkness_salience_from_lightness(double delta_l,
                                                  double reference = kReferenceLightnessDelta);

/// Weights on direct-association merit (wa) and dark-is-more merit (wd).
struct WeightPair {
  double wa = 1.0;
  double wd = 0.0;

  /// Throws ErrorCode::validation unless both lie in [0, 1] and sum to 1.
  static WeightPair make(double wa, double wd);
  void validate() const;

  friend bool operator==(const WeightPair&, const WeightPair&) = default;
};

inline constexpr WeightPair kDefaultWeights{0.7, 0.3};

/// Element-wise wa * A + wd * D.
MeritGraph2x2 combine_merit(const MeritGraph2x2& direct, const MeritGraph2x2& darkness,
                            const WeightPair& w);

struct PredictionResult {
  Assignment assignment = Assignment::dark_more;
  double delta_s = 0.0;
  double signed_s = 0.0;
  double p_dark_more = 0.5;
};

PredictionResult predict(const MeritGraph2x2& direct, const MeritGraph2x2& darkness,
                         const WeightPair& w);

/// Direct-association merit from endpoint ratings.
MeritGraph2x2 direct_merit(const associations::EndpointRatings& ratings);

}  // namespace chroma_infer::inference
