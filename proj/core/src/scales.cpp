#include "chroma_infer/scales.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "chroma_infer/error.hpp"

namespace chroma_infer::scales {

namespace {

double pearson_squared(std::span<const double> xs, std::span<const double> ys, bool& degenerate) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  // Variation at rounding level of the values counts as none.
  const double scale = std::max(1.0, std::abs(my));
  degenerate = sxx == 0.0 || syy <= 1e-24 * scale * scale * n;
  if (degenerate) return 0.0;
  return (sxy * sxy) / (sxx * syy);
}

}  // namespace

std::array<double, kPredictors> design_row(const color::LchColor& c, HueUnits units) {
  const double h = units == HueUnits::degrees ? c.h * std::numbers::pi / 180.0 : c.h;
  return {c.L, c.C, std::sin(h), std::cos(h), std::sin(2.0 * h), std::cos(2.0 * h), 1.0};
}

RegressionFit fit_colorspace_regression(std::span<const color::LchColor> colors,
                                        std::span<const double> ratings, HueUnits units) {
  if (colors.size() != ratings.size()) {
    throw Error(ErrorCode::shape, "colors and ratings differ in length");
  }
  const auto n = static_cast<Eigen::Index>(colors.size());
  constexpr auto p = static_cast<Eigen::Index>(kPredictors);
  if (n <= p) {
    throw Error(ErrorCode::validation, "color-space regression needs at least 8 colors, got " +
                                           std::to_string(colors.size()));
  }
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = design_row(colors[static_cast<std::size_t>(i)], units);
    for (Eigen::Index j = 0; j < p; ++j) X(i, j) = row[static_cast<std::size_t>(j)];
    y(i) = ratings[static_cast<std::size_t>(i)];
    if (!std::isfinite(y(i)) || !X.row(i).allFinite()) {
      throw Error(ErrorCode::invalid_input, "non-finite value in regression inputs");
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    std::string names;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < p; ++k) {
      if (!names.empty()) names += ", ";
      names += kPredictorNames[static_cast<std::size_t>(perm(k))];
    }
    throw Error(ErrorCode::singular_fit, "rank-deficient design; dependent columns: " + names,
                names);
  }
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd fitted = X * beta;
  const Eigen::VectorXd resid = y - fitted;

  RegressionFit fit;
  fit.hue_units = units;
  for (std::size_t j = 0; j < 6; ++j) fit.slopes[j] = beta(static_cast<Eigen::Index>(j));
  fit.intercept = beta(6);
  fit.residuals.assign(resid.data(), resid.data() + resid.size());

  std::vector<double> f(fitted.data(), fitted.data() + fitted.size());
  std::vector<double> obs(y.data(), y.data() + y.size());
  bool degenerate = false;
  const double r2 = pearson_squared(f, obs, degenerate);
  fit.multiple_r = degenerate ? 0.0 : std::sqrt(r2);

  // cov(beta) = s^2 * P (R^T R)^-1 P^T
  const double s2 = resid.squaredNorm() / static_cast<double>(n - p);
  const Eigen::MatrixXd R =
      qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
  const Eigen::MatrixXd Rinv =
      R.template triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd inner = Rinv * Rinv.transpose();
  const Eigen::MatrixXd cov = qr.colsPermutation() * inner * qr.colsPermutation().transpose();
  for (Eigen::Index j = 0; j < p; ++j) {
    fit.standard_errors[static_cast<std::size_t>(j)] = std::sqrt(std::max(0.0, s2 * cov(j, j)));
  }
  return fit;
}

double predict_association(const RegressionFit& fit, const color::LchColor& c) {
  const auto row = design_row(c, fit.hue_units);
  double value = fit.intercept;
  for (std::size_t j = 0; j < 6; ++j) value += fit.slopes[j] * row[j];
  return value;
}

MonotonicityReport monotonicity_check(const color::ColorScale& scale, const RegressionFit& fit,
                                      double threshold) {
  MonotonicityReport report;
  std::array<double, color::kScaleSteps> sequence{};
  for (std::size_t i = 0; i < color::kScaleSteps; ++i) {
    sequence[i] = static_cast<double>(i + 1);
    report.predicted[i] = predict_association(fit, color::lab_to_lch(scale.steps()[i]));
  }
  report.r_squared = pearson_squared(sequence, report.predicted, report.degenerate);
  report.pass = !report.degenerate && report.r_squared >= threshold;
  return report;
}

void PairConstraints::validate() const {
  for (double d : allowed_lightness_deltas) {
    if (!(d >= 0.0)) throw Error(ErrorCode::validation, "allowed lightness deltas must be >= 0");
  }
  if (!(lightness_tolerance >= 0.0) || !(min_lightness_delta >= 0.0)) {
    throw Error(ErrorCode::validation, "lightness tolerance and minimum delta must be >= 0");
  }
  if (!std::is_sorted(association_difference_bins.begin(), association_difference_bins.end())) {
    throw Error(ErrorCode::validation, "association difference bin edges must be ascending");
  }
  if (!(monotonicity_threshold >= 0.0 && monotonicity_threshold <= 1.0)) {
    throw Error(ErrorCode::validation, "monotonicity threshold must lie in [0, 1]");
  }
}

bool is_black_or_white(const color::LabColor& c) {
  return std::hypot(c.a, c.b) < 0.5 && (c.L <= 0.5 || c.L >= 99.5);
}

namespace {

enum class Stage { equal, small, black_white, not_allowed, kept };

Stage classify(const color::PaletteEntry& a, const color::PaletteEntry& b,
               const PairConstraints& c) {
  const double dl = color::lightness_difference(a.lab, b.lab);
  if (dl < c.lightness_tolerance) return Stage::equal;
  if (dl < c.min_lightness_delta - c.lightness_tolerance) return Stage::small;
  if (c.exclude_black_white && (is_black_or_white(a.lab) || is_black_or_white(b.lab))) {
    return Stage::black_white;
  }
  if (!c.allowed_lightness_deltas.empty()) {
    const bool allowed =
        std::any_of(c.allowed_lightness_deltas.begin(), c.allowed_lightness_deltas.end(),
                    [&](double d) { return std::abs(dl - d) <= c.lightness_tolerance; });
    if (!allowed) return Stage::not_allowed;
  }
  return Stage::kept;
}

template <typename OnKept>
FilterCounts run_filters(const color::Palette& palette, const PairConstraints& c, OnKept on_kept) {
  c.validate();
  FilterCounts counts;
  const auto entries = palette.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      ++counts.total_pairs;
      switch (classify(entries[i], entries[j], c)) {
        case Stage::equal: ++counts.equal_lightness; break;
        case Stage::small: ++counts.small_lightness_difference; break;
        case Stage::black_white: ++counts.black_white; break;
        case Stage::not_allowed: ++counts.lightness_delta_not_allowed; break;
        case Stage::kept: on_kept(entries[i], entries[j]); break;
      }
    }
  }
  return counts;
}

}  // namespace

FilterCounts count_lightness_filters(const color::Palette& palette, const PairConstraints& c) {
  return run_filters(palette, c, [](const auto&, const auto&) {});
}

PairSelection select_endpoint_pairs(const color::Palette& palette,
                                    std::span<const ConceptModel> concepts,
                                    const PairConstraints& constraints) {
  PairSelection selection;
  selection.counts = run_filters(
      palette, constraints, [&](const color::PaletteEntry& a, const color::PaletteEntry& b) {
        const bool a_light = a.lab.L > b.lab.L;
        const color::PaletteEntry& light = a_light ? a : b;
        const color::PaletteEntry& dark = a_light ? b : a;
        color::ColorScale scale = color::interpolate_scale(light.lab, dark.lab);
        scale.light_index = light.index;
        scale.dark_index = dark.index;

        CandidatePair cand;
        cand.light_index = light.index;
        cand.dark_index = dark.index;
        cand.lightness_delta = scale.lightness_delta();
        cand.pass = true;
        for (const auto& model : concepts) {
          ConceptCheck check;
          check.concept_name = model.table.concept_name;
          check.association_difference =
              associations::association_difference(model.table, light.index, dark.index);
          check.monotonicity =
              monotonicity_check(scale, model.fit, constraints.monotonicity_threshold);
          cand.pass = cand.pass && check.monotonicity.pass;
          cand.checks.push_back(std::move(check));
        }
        const auto& edges = constraints.association_difference_bins;
        if (!edges.empty() && !cand.checks.empty()) {
          const double d = cand.checks.front().association_difference;
          cand.bin = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), d) -
                                              edges.begin());
        }
        selection.candidates.push_back(std::move(cand));
      });
  for (const auto& cand : selection.candidates) {
    if (cand.pass) {
      ++selection.counts.passing;
    } else {
      ++selection.counts.monotonicity_failed;
    }
  }
  return selection;
}

std::vector<double> even_size_bin_edges(std::span<const double> values, std::size_t bins) {
  if (bins == 0 || values.size() < bins) {
    throw Error(ErrorCode::validation, "need at least as many values as bins");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> edges;
  for (std::size_t k = 1; k < bins; ++k) {
    const std::size_t idx = k * sorted.size() / bins;
    edges.push_back(0.5 * (sorted[idx - 1] + sorted[idx]));
  }
  return edges;
}

}  // namespace chroma_infer::scales
