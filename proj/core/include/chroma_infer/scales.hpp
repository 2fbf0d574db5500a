#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chroma_infer/associations.hpp"
#include "chroma_infer/color.hpp"
#include "chroma_infer/palette.hpp"

namespace chroma_infer::scales {

/// How hue enters the harmonic predictors. `legacy_radians` feeds the degree
/// value straight into sin/cos, reproducing an earlier analysis bug.
enum class HueUnits { degrees, legacy_radians };

inline constexpr std::size_t kPredictors = 7;
inline constexpr std::array<std::string_view, kPredictors> kPredictorNames = {
    "L", "C", "sin_h", "cos_h", "sin_2h", "cos_2h", "intercept"};

/// Cylindrical two-harmonic color-space regression.
struct RegressionFit {
  std::array<double, 6> slopes{};
  double intercept = 0.0;
  std::array<double, kPredictors> standard_errors{};
  double multiple_r = 0.0;
  std::vector<double> residuals;
  HueUnits hue_units = HueUnits::degrees;
};

std::array<double, kPredictors> design_row(const color::LchColor& c, HueUnits units);

/// Ordinary least squares by column-pivoted Householder QR. Needs at least 8
/// colors. Throws ErrorCode::singular_fit naming the dependent columns when
/// the design is rank deficient.
RegressionFit fit_colorspace_regression(std::span<const color::LchColor> colors,
                                        std::span<const double> ratings,
                                        HueUnits units = HueUnits::degrees);

/// Unclamped linear prediction.
double predict_association(const RegressionFit& fit, const color::LchColor& c);

inline constexpr double kMonotonicityThreshold = 0.8;

struct MonotonicityReport {
  double r_squared = 0.0;
  bool pass = false;
  bool degenerate = false;
  std::array<double, color::kScaleSteps> predicted{};
};

/// Regresses the predicted associations of the ten steps on 1..10. Zero
/// variance predictions give r_squared = 0, flagged degenerate.
MonotonicityReport monotonicity_check(const color::ColorScale& scale, const RegressionFit& fit,
                                      double threshold = kMonotonicityThreshold);

struct PairConstraints {
  std::vector<double> allowed_lightness_deltas{38.0, 50.0};
  double lightness_tolerance = 0.5;
  double min_lightness_delta = 38.0;
  bool exclude_black_white = true;
  /// Ascending interior edges; k edges produce k + 1 bins.
  std::vector<double> association_difference_bins;
  double monotonicity_threshold = kMonotonicityThreshold;

  void validate() const;
};

/// Association data and regression model for one concept.
struct ConceptModel {
  associations::AssociationTable table;
  RegressionFit fit;
};

struct ConceptCheck {
  std::string concept_name;
  double association_difference = 0.0;
  MonotonicityReport monotonicity;
};

struct CandidatePair {
  int light_index = 0;
  int dark_index = 0;
  double lightness_delta = 0.0;
  std::vector<ConceptCheck> checks;
  /// Every concept's monotonicity check passed.
  bool pass = false;
  /// Bin of the first concept's association difference, when bins are set.
  std::optional<std::size_t> bin;
};

struct FilterCounts {
  std::size_t total_pairs = 0;
  std::size_t equal_lightness = 0;
  std::size_t small_lightness_difference = 0;
  std::size_t black_white = 0;
  std::size_t lightness_delta_not_allowed = 0;
  std::size_t monotonicity_failed = 0;
  std::size_t passing = 0;
};

struct PairSelection {
  /// Pairs surviving the lightness filters, in palette order, with their
  /// monotonicity results (failures included, flagged by `pass`).
  std::vector<CandidatePair> candidates;
  FilterCounts counts;
};

/// Lightness-only part of the filter sequence, reported as stage counts.
FilterCounts count_lightness_filters(const color::Palette& palette, const PairConstraints& c);

PairSelection select_endpoint_pairs(const color::Palette& palette,
                                    std::span<const ConceptModel> concepts,
                                    const PairConstraints& constraints = {});

/// Interior edges splitting `values` into `bins` groups of (nearly) equal size.
std::vector<double> even_size_bin_edges(std::span<const double> values, std::size_t bins);

/// True for black (L* ~ 0) or white (L* ~ 100) achromatic colors.
bool is_black_or_white(const color::LabColor& c);

}  // namespace chroma_infer::scales
