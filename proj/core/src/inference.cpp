#include "chroma_infer/inference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "chroma_infer/error.hpp"

namespace chroma_infer::inference {

void MeritGraph2x2::validate() const {
  for (double v : edges()) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::validation, "merit edges must lie in [0, 1]");
    }
  }
}

MeritGraph2x2 swap_colors(const MeritGraph2x2& m) { return {m.x2, m.x1, m.x4, m.x3}; }

double edge_sigma(double mean_merit) { return 1.4 * mean_merit * (1.0 - mean_merit); }

EdgeUncertainty uncertainty(const MeritGraph2x2& m) {
  return {{edge_sigma(m.x1), edge_sigma(m.x2), edge_sigma(m.x3), edge_sigma(m.x4)}};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double mean_delta_x(const MeritGraph2x2& m) { return (m.x1 - m.x2) + (m.x3 - m.x4); }

namespace {

// Paired so that relabeling the colors permutes terms within each pair and
// leaves the rounded sum bit-identical.
double delta_x_variance(const MeritGraph2x2& m) {
  const auto s = uncertainty(m).sigma;
  return (s[0] * s[0] + s[1] * s[1]) + (s[2] * s[2] + s[3] * s[3]);
}

}  // namespace

double prob_delta_positive(const MeritGraph2x2& m) {
  const double mean = mean_delta_x(m);
  const double var = delta_x_variance(m);
  if (var == 0.0) return mean > 0.0 ? 1.0 : (mean < 0.0 ? 0.0 : 0.5);
  return normal_cdf(mean / std::sqrt(var));
}

double semantic_distance(const MeritGraph2x2& m) {
  const double mean = mean_delta_x(m);
  const double var = delta_x_variance(m);
  if (var == 0.0) return mean != 0.0 ? 1.0 : 0.0;
  // 2 * Phi(z) - 1 == erf(z / sqrt 2), without the cancellation near 1.
  return std::abs(std::erf(mean / std::sqrt(2.0 * var)));
}

std::string_view to_string(Assignment a) {
  return a == Assignment::dark_more ? "dark_more" : "light_more";
}

Assignment parse_assignment(std::string_view text) {
  if (text == "dark_more") return Assignment::dark_more;
  if (text == "light_more") return Assignment::light_more;
  throw Error(ErrorCode::parse, "unknown assignment '" + std::string(text) + "'");
}

Assignment optimal_assignment_2x2(const MeritGraph2x2& m) {
  return mean_delta_x(m) >= 0.0 ? Assignment::dark_more : Assignment::light_more;
}

double signed_semantic_distance(const MeritGraph2x2& m) {
  const double ds = semantic_distance(m);
  return optimal_assignment_2x2(m) == Assignment::dark_more ? ds : -ds;
}

MeritGraph2x2 darkness_merit(double salience) {
  if (!std::isfinite(salience) || salience < 0.0 || salience > 1.0) {
    throw Error(ErrorCode::validation, "darkness salience must lie in [0, 1]");
  }
  return {salience, 0.0, salience, 0.0};
}

SalienceEstimate darkness_salience(std::span<const DarknessRating> ratings, double half_range) {
  if (!(half_range > 0.0) || !std::isfinite(half_range)) {
    throw Error(ErrorCode::validation, "slider half range must be positive");
  }
  if (ratings.empty()) {
    throw Error(ErrorCode::missing_data, "no darkness ratings supplied");
  }
  std::map<std::string, std::pair<double, int>> per_rater;
  for (const auto& r : ratings) {
    if (!std::isfinite(r.slider) || std::abs(r.slider) > half_range * (1.0 + 1e-12)) {
      throw Error(ErrorCode::validation, "darkness rating outside the slider range");
    }
    // Positive means the lower-L* endpoint was judged darker.
    const double toward_dark = r.darker_on_left ? -r.slider : r.slider;
    auto& [sum, count] = per_rater[r.rater_id];
    sum += toward_dark;
    ++count;
  }
  double total = 0.0;
  for (const auto& [id, acc] : per_rater) total += acc.first / acc.second;
  const double mean = total / static_cast<double>(per_rater.size());
  SalienceEstimate est;
  est.salience = std::min(std::abs(mean) / half_range, 1.0);
  est.ordering_conflict = mean < 0.0;
  est.from_ratings = true;
  return est;
}

SalienceEstimate darkness_salience_from_lightness(double delta_l, double reference) {
  if (!std::isfinite(delta_l) || !(reference > 0.0)) {
    throw Error(ErrorCode::validation, "invalid lightness difference for salience fallback");
  }
  SalienceEstimate est;
  est.salience = std::clamp(delta_l / reference, 0.0, 1.0);
  return est;
}

WeightPair WeightPair::make(double wa, double wd) {
  WeightPair w{wa, wd};
  w.validate();
  return w;
}

void WeightPair::validate() const {
  if (!std::isfinite(wa) || !std::isfinite(wd) || wa < 0.0 || wa > 1.0 || wd < 0.0 || wd > 1.0) {
    throw Error(ErrorCode::validation, "weights must lie in [0, 1]");
  }
  if (std::abs(wa + wd - 1.0) > 1e-9) {
    throw Error(ErrorCode::validation, "weights must sum to 1");
  }
}

MeritGraph2x2 combine_merit(const MeritGraph2x2& direct, const MeritGraph2x2& darkness,
                            const WeightPair& w) {
  w.validate();
  direct.validate();
  darkness.validate();
  auto mix = [&](double a, double d) { return std::clamp(w.wa * a + w.wd * d, 0.0, 1.0); };
  return {mix(direct.x1, darkness.x1), mix(direct.x2, darkness.x2), mix(direct.x3, darkness.x3),
          mix(direct.x4, darkness.x4)};
}

PredictionResult predict(const MeritGraph2x2& direct, const MeritGraph2x2& darkness,
                         const WeightPair& w) {
  const MeritGraph2x2 combined = combine_merit(direct, darkness, w);
  PredictionResult r;
  r.assignment = optimal_assignment_2x2(combined);
  r.delta_s = semantic_distance(combined);
  r.signed_s = r.assignment == Assignment::dark_more ? r.delta_s : -r.delta_s;
  r.p_dark_more = (r.signed_s + 1.0) / 2.0;
  return r;
}

MeritGraph2x2 direct_merit(const associations::EndpointRatings& ratings) {
  ratings.validate();
  return {ratings.dark_more, ratings.light_more, ratings.light_less, ratings.dark_less};
}

}  // namespace chroma_infer::inference
