#pragma once

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chroma_infer/color.hpp"

namespace chroma_infer::associations {

/// A rated color: a palette index (1..71 for UW-71) or an inline CIELAB point.
using ColorRef = std::variant<int, color::LabColor>;

/// "17" or "lab:50:10:-20".
std::string to_string(const ColorRef& ref);
ColorRef parse_color_ref(std::string_view text);

inline constexpr int kRawRatingMin = -200;
inline constexpr int kRawRatingMax = 200;

struct RatingRecord {
  std::string participant_id;
  std::string concept_name;
  ColorRef color;
  int raw_rating = 0;
};

/// Maps the -200..200 slider onto [0, 1]. Throws ErrorCode::validation.
double normalize_rating(int raw);

struct AttentionCheckSpec {
  std::string concept_name = "celery";
  std::array<int, 6> strong_colors{};
  std::array<int, 6> weak_colors{};
  double threshold = 0.5;
  int min_pass = 5;

  /// Strong and weak sets must be disjoint.
  void validate() const;
};

/// Pass iff at least `min_pass` strong colors are rated above the threshold
/// and at least `min_pass` weak colors below it. Ratings are normalized.
/// Throws ErrorCode::incomplete_data when a check color is missing.
bool attention_check(const std::map<int, double>& ratings, const AttentionCheckSpec& spec);

struct ColorStats {
  double mean = 0.0;
  double sem = 0.0;
  std::size_t n = 0;
};

struct AssociationTable {
  std::string concept_name;
  std::size_t n_participants = 0;
  std::map<ColorRef, ColorStats> colors;

  bool contains(const ColorRef& ref) const { return colors.contains(ref); }
  /// Throws ErrorCode::lookup.
  double mean(const ColorRef& ref) const;
  const ColorStats& stats(const ColorRef& ref) const;
};

/// Participant ids that fail the attention check. Empty when the records
/// contain no trials for the check concept.
std::vector<std::string> failing_participants(std::span<const RatingRecord> records,
                                              const AttentionCheckSpec& spec);

/// Per-color mean of normalized ratings over participants who pass the
/// optional attention check. Every passing participant must have rated every
/// color that any passing participant rated (ErrorCode::incomplete_data).
AssociationTable mean_associations(std::span<const RatingRecord> records,
                                   std::string_view concept_name,
                                   const std::optional<AttentionCheckSpec>& filter = std::nullopt);

/// mean(dark) - mean(light); positive when the darker color is more associated.
double association_difference(const AssociationTable& table, const ColorRef& light,
                              const ColorRef& dark);

/// Reads `participant_id,concept,color_index,raw_rating` (header required,
/// any column order).
std::vector<RatingRecord> read_ratings_csv(std::istream& in, std::string_view source = "<stream>");
std::vector<RatingRecord> load_ratings_csv(const std::string& path);

/// Concepts present in the records, sorted.
std::vector<std::string> concepts(std::span<const RatingRecord> records);

// Endpoint concepts of a continuous domain, stored verbatim.
std::string more_concept(std::string_view domain);
std::string less_concept(std::string_view domain);

/// Mean ratings of the two endpoint colors with the two endpoint concepts.
struct EndpointRatings {
  std::string concept_name;
  double dark_more = 0.0;
  double dark_less = 0.0;
  double light_more = 0.0;
  double light_less = 0.0;

  void validate() const;
};

EndpointRatings endpoint_ratings(std::string_view domain, const AssociationTable& more,
                                 const AssociationTable& less, const ColorRef& light,
                                 const ColorRef& dark);

}  // namespace chroma_infer::associations
