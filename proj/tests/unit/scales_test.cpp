#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <chroma_infer/error.hpp>
#include <chroma_infer/scales.hpp>
#include <cmath>
#include <numeric>
#include <random>

using namespace chroma_infer;
using namespace chroma_infer::scales;
using color::LabColor;
using color::LchColor;

namespace {

const color::Palette& uw71() {
  static const color::Palette p =
      color::load_uw71(std::string(CHROMA_INFER_TEST_DATA_DIR) + "/uw71.csv");
  return p;
}

std::vector<LchColor> uw71_lch() {
  std::vector<LchColor> out;
  for (const auto& e : uw71().entries()) out.push_back(e.lch);
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

color::PaletteEntry entry(int index, LabColor lab) {
  color::PaletteEntry e;
  e.index = index;
  e.lab = lab;
  e.lch = color::lab_to_lch(lab);
  e.xyy = color::lab_to_xyy(lab);
  return e;
}

color::Palette toy_palette(bool reversed = false) {
  std::vector<color::PaletteEntry> es{
      entry(1, {88, 10, 10}), entry(2, {50, -20, 5}), entry(3, {38, 4, -30}),
      entry(4, {0, 0, 0}),    entry(5, {50, 30, 30}), entry(6, {100, 5, 0}),
  };
  if (reversed) std::reverse(es.begin(), es.end());
  return color::Palette(std::move(es));
}

RegressionFit lightness_fit(double slope) {
  RegressionFit f;
  f.slopes[0] = slope;
  return f;
}

}  // namespace

TEST(Regression, PlantedLightnessModel) {
  const auto colors = uw71_lch();
  std::vector<double> ratings;
  for (const auto& c : colors) ratings.push_back(0.01 * c.L);
  const RegressionFit fit = fit_colorspace_regression(colors, ratings);
  EXPECT_NEAR(fit.slopes[0], 0.01, 1e-12);
  for (std::size_t j = 1; j < 6; ++j) EXPECT_NEAR(fit.slopes[j], 0.0, 1e-12);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-10);
  EXPECT_NEAR(fit.multiple_r, 1.0, 1e-12);
  for (std::size_t i = 0; i < colors.size(); ++i) {
    EXPECT_NEAR(predict_association(fit, colors[i]), ratings[i], 1e-10);
  }
}

TEST(Regression, ResidualsOrthogonalToDesign) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0, 1);
  const auto colors = uw71_lch();
  std::vector<double> ratings;
  for (std::size_t i = 0; i < colors.size(); ++i) ratings.push_back(u(rng));
  const RegressionFit fit = fit_colorspace_regression(colors, ratings);
  for (std::size_t j = 0; j < kPredictors; ++j) {
    double dot = 0, cn = 0, rn = 0;
    for (std::size_t i = 0; i < colors.size(); ++i) {
      const double x = design_row(colors[i], HueUnits::degrees)[j];
      dot += x * fit.residuals[i];
      cn += x * x;
      rn += fit.residuals[i] * fit.residuals[i];
    }
    EXPECT_LE(std::abs(dot), 1e-6 * std::sqrt(cn * rn)) << kPredictorNames[j];
  }
}

TEST(Regression, MultipleRIsCorrelationOfFittedAndObserved) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, 1);
  const auto colors = uw71_lch();
  std::vector<double> ratings;
  for (const auto& c : colors) ratings.push_back(0.004 * c.L + 0.2 * u(rng));
  const RegressionFit fit = fit_colorspace_regression(colors, ratings);
  std::vector<double> fitted;
  for (std::size_t i = 0; i < colors.size(); ++i) fitted.push_back(ratings[i] - fit.residuals[i]);
  EXPECT_NEAR(fit.multiple_r, pearson(fitted, ratings), 1e-10);
  EXPECT_GE(fit.multiple_r, 0.0);
  EXPECT_LE(fit.multiple_r, 1.0);
}

TEST(Regression, MultipleRAffineInvariant) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0, 1);
  const auto colors = uw71_lch();
  std::vector<double> ratings, scaled;
  for (const auto& c : colors) ratings.push_back(0.003 * c.C + 0.3 * u(rng));
  for (double r : ratings) scaled.push_back(-3.5 * r + 12.0);
  const double a = fit_colorspace_regression(colors, ratings).multiple_r;
  const double b = fit_colorspace_regression(colors, scaled).multiple_r;
  EXPECT_NEAR(a, b, 1e-10);
}

TEST(Regression, RecoversCoefficientsWithinThreeStandardErrors) {
  const std::array<double, 7> truth{0.006, 0.002, 0.05, -0.04, 0.03, 0.02, 0.1};
  std::mt19937_64 rng(44);
  std::normal_distribution<double> noise(0.0, 0.02);
  const auto colors = uw71_lch();
  std::vector<double> ratings;
  for (const auto& c : colors) {
    const auto row = design_row(c, HueUnits::degrees);
    double v = 0;
    for (std::size_t j = 0; j < 7; ++j) v += truth[j] * row[j];
    ratings.push_back(v + noise(rng));
  }
  const RegressionFit fit = fit_colorspace_regression(colors, ratings);
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_GT(fit.standard_errors[j], 0.0);
    EXPECT_LE(std::abs(fit.slopes[j] - truth[j]), 3 * fit.standard_errors[j]) << j;
  }
  EXPECT_LE(std::abs(fit.intercept - truth[6]), 3 * fit.standard_errors[6]);
}

TEST(Regression, StandardErrorsMatchNormalEquations) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> u(0, 1);
  const auto colors = uw71_lch();
  std::vector<double> ratings;
  for (std::size_t i = 0; i < colors.size(); ++i) ratings.push_back(u(rng));
  const RegressionFit fit = fit_colorspace_regression(colors, ratings);
  const auto n = static_cast<Eigen::Index>(colors.size());
  Eigen::MatrixXd X(n, 7);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = design_row(colors[static_cast<std::size_t>(i)], HueUnits::degrees);
    for (int j = 0; j < 7; ++j) X(i, j) = row[static_cast<std::size_t>(j)];
  }
  double rss = 0;
  for (double r : fit.residuals) rss += r * r;
  const Eigen::MatrixXd cov = (X.transpose() * X).inverse() * (rss / static_cast<double>(n - 7));
  for (int j = 0; j < 7; ++j) {
    EXPECT_NEAR(fit.standard_errors[static_cast<std::size_t>(j)], std::sqrt(cov(j, j)), 1e-9);
  }
}

TEST(Regression, SingularDesignNamesColumns) {
  std::vector<LchColor> grays;
  std::vector<double> ratings;
  for (int i = 0; i < 10; ++i) {
    grays.push_back({10.0 * i, 0, 0});
    ratings.push_back(0.1 * i);
  }
  try {
    fit_colorspace_regression(grays, ratings);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singular_fit);
    EXPECT_FALSE(e.detail().empty());
  }
}

TEST(Regression, InputValidation) {
  std::vector<LchColor> few(7, LchColor{50, 10, 30});
  std::vector<double> r(7, 0.5);
  EXPECT_THROW(fit_colorspace_regression(few, r), Error);
  std::vector<double> wrong(6, 0.5);
  EXPECT_THROW(fit_colorspace_regression(few, wrong), Error);
  auto colors = uw71_lch();
  std::vector<double> ratings(colors.size(), 0.5);
  ratings[3] = std::nan("");
  try {
    fit_colorspace_regression(colors, ratings);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_input);
  }
}

TEST(Regression, PredictExamples) {
  RegressionFit f;
  f.intercept = 0.3;
  EXPECT_DOUBLE_EQ(predict_association(f, {50, 40, 123}), 0.3);
  f.slopes = {0, 0.5, 0, 0.1, 0, 0.2};
  EXPECT_NEAR(predict_association(f, {50, 0, 0}), 0.3 + 0.1 + 0.2, 1e-15);
}

TEST(Regression, LegacyHueUnits) {
  const LchColor c{50, 20, 90};
  const auto deg = design_row(c, HueUnits::degrees);
  const auto rad = design_row(c, HueUnits::legacy_radians);
  EXPECT_NEAR(deg[2], 1.0, 1e-15);
  EXPECT_NEAR(deg[3], 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(rad[2], std::sin(90.0));
  EXPECT_DOUBLE_EQ(rad[5], std::cos(180.0));
}

TEST(Monotonicity, LinearPasses) {
  const auto scale = color::interpolate_scale({88, 0, 0}, {25, 0, 0});
  const auto r = monotonicity_check(scale, lightness_fit(-0.01));
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.degenerate);
}

TEST(Monotonicity, InteriorBumpFails) {
  // Chroma dips to zero mid-scale then rises again.
  const auto scale = color::interpolate_scale({70, 40, 0}, {30, -40, 0});
  RegressionFit f;
  f.slopes[1] = -0.01;
  f.intercept = 0.8;
  const auto r = monotonicity_check(scale, f);
  EXPECT_GT(r.predicted[4], r.predicted[0]);
  EXPECT_GT(r.predicted[4], r.predicted[9]);
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.r_squared, 0.8);
}

TEST(Monotonicity, ConstantIsDegenerate) {
  RegressionFit f;
  f.intercept = 0.4;
  const auto r = monotonicity_check(color::interpolate_scale({88, 0, 0}, {25, 0, 0}), f);
  EXPECT_EQ(r.r_squared, 0.0);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(r.degenerate);
}

TEST(Monotonicity, RSquaredIsSquaredPearson) {
  std::mt19937_64 rng(46);
  std::uniform_real_distribution<double> u(-0.02, 0.02);
  std::array<double, 10> seq{};
  std::iota(seq.begin(), seq.end(), 1.0);
  for (int i = 0; i < 200; ++i) {
    RegressionFit f;
    for (double& s : f.slopes) s = u(rng);
    f.intercept = 0.5;
    const auto scale = color::interpolate_scale({80, 30, -20}, {30, -10, 40});
    const auto r = monotonicity_check(scale, f);
    const double p = pearson(seq, r.predicted);
    EXPECT_NEAR(r.r_squared, p * p, 1e-12);
    EXPECT_EQ(r.pass, r.r_squared >= 0.8);
  }
}

TEST(PairFilters, ToyPaletteHandEnumeration) {
  const FilterCounts c = count_lightness_filters(toy_palette(), {});
  EXPECT_EQ(c.total_pairs, 15u);
  EXPECT_EQ(c.equal_lightness, 1u);
  EXPECT_EQ(c.small_lightness_difference, 3u);
  EXPECT_EQ(c.black_white, 5u);
  EXPECT_EQ(c.lightness_delta_not_allowed, 1u);

  const PairSelection s = select_endpoint_pairs(toy_palette(), {}, {});
  std::vector<std::pair<int, int>> kept;
  for (const auto& cand : s.candidates) kept.emplace_back(cand.light_index, cand.dark_index);
  std::sort(kept.begin(), kept.end());
  EXPECT_EQ(kept, (std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 5}, {6, 2}, {6, 5}}));
  EXPECT_EQ(s.counts.passing, 5u);
}

TEST(PairFilters, KeepingBlackAndWhite) {
  PairConstraints c;
  c.exclude_black_white = false;
  const FilterCounts counts = count_lightness_filters(toy_palette(), c);
  EXPECT_EQ(counts.black_white, 0u);
  EXPECT_EQ(counts.lightness_delta_not_allowed, 3u);
}

TEST(PairFilters, SymmetricInPaletteOrder) {
  auto key = [](const PairSelection& s) {
    std::vector<std::tuple<int, int, double>> out;
    for (const auto& c : s.candidates) out.emplace_back(c.light_index, c.dark_index, c.lightness_delta);
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(key(select_endpoint_pairs(toy_palette(false), {}, {})),
            key(select_endpoint_pairs(toy_palette(true), {}, {})));
}

TEST(PairFilters, Uw71Counts) {
  const FilterCounts c = count_lightness_filters(uw71(), {});
  EXPECT_EQ(c.total_pairs, 2485u);
  EXPECT_EQ(c.equal_lightness, 637u);
  EXPECT_EQ(c.small_lightness_difference, 1059u);
  EXPECT_EQ(c.black_white, 97u);
  EXPECT_EQ(c.lightness_delta_not_allowed, 143u);
  const PairSelection s = select_endpoint_pairs(uw71(), {}, {});
  EXPECT_EQ(s.candidates.size(), 2485u - 637 - 1059 - 97 - 143);
  for (const auto& cand : s.candidates) {
    const double d = cand.lightness_delta;
    EXPECT_TRUE(std::abs(d - 38) <= 0.5 || std::abs(d - 50) <= 0.5);
    EXPECT_GT(uw71().at(cand.light_index).lab.L, uw71().at(cand.dark_index).lab.L);
  }
}

TEST(PairFilters, ConceptChecksAndBins) {
  ConceptModel m;
  m.table.concept_name = "dark lover";
  const auto palette = toy_palette();
  for (const auto& e : palette.entries()) m.table.colors[e.index] = {1.0 - e.lab.L / 100.0, 0, 1};
  m.fit = lightness_fit(-0.01);
  m.fit.intercept = 1.0;
  ConceptModel flat;
  flat.table = m.table;
  flat.table.concept_name = "flat";
  flat.fit.intercept = 0.5;

  PairConstraints c;
  c.association_difference_bins = {0.45};
  const std::vector<ConceptModel> one{m};
  const PairSelection s = select_endpoint_pairs(toy_palette(), one, c);
  ASSERT_EQ(s.candidates.size(), 5u);
  for (const auto& cand : s.candidates) {
    ASSERT_EQ(cand.checks.size(), 1u);
    EXPECT_TRUE(cand.pass);
    const double d = cand.checks[0].association_difference;
    EXPECT_NEAR(d, cand.lightness_delta / 100.0, 1e-12);
    ASSERT_TRUE(cand.bin.has_value());
    EXPECT_EQ(*cand.bin, d > 0.45 ? 1u : 0u);
  }
  EXPECT_EQ(s.counts.passing, 5u);

  const std::vector<ConceptModel> two{m, flat};
  const PairSelection t = select_endpoint_pairs(toy_palette(), two, {});
  EXPECT_EQ(t.counts.passing, 0u);
  EXPECT_EQ(t.counts.monotonicity_failed, 5u);
}

TEST(PairFilters, ConstraintValidation) {
  PairConstraints c;
  c.association_difference_bins = {0.5, 0.1};
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.allowed_lightness_deltas = {-1};
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.monotonicity_threshold = 2;
  EXPECT_THROW(c.validate(), Error);
}

TEST(PairFilters, BlackWhiteDetection) {
  EXPECT_TRUE(is_black_or_white({0, 0, 0}));
  EXPECT_TRUE(is_black_or_white({100, 0, 0}));
  EXPECT_FALSE(is_black_or_white({50, 0, 0}));
  EXPECT_FALSE(is_black_or_white({100, 5, 0}));
}

TEST(PairFilters, EvenBins) {
  const std::vector<double> v{8, 1, 7, 2, 6, 3, 5, 4};
  EXPECT_EQ(even_size_bin_edges(v, 4), (std::vector<double>{2.5, 4.5, 6.5}));
  EXPECT_TRUE(even_size_bin_edges(v, 1).empty());
  EXPECT_THROW(even_size_bin_edges(v, 9), Error);
}
