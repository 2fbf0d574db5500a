#include <gtest/gtest.h>

#include <chroma_infer/error.hpp>
#include <chroma_infer/stimuli.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

using namespace chroma_infer;
using namespace chroma_infer::stimuli;

namespace {

constexpr std::array<double, 8> kBase{0.088585532783, 0.121118941591, 0.187167041811,
                                      0.352416382350, 0.647583617650, 0.812832958189,
                                      0.878881058409, 0.911414467217};
constexpr std::array<double, 8> kTruncMean{0.2351206562, 0.2501514723, 0.2840789310,
                                           0.3889329516, 0.6110670484, 0.7159210690,
                                           0.7498485277, 0.7648793438};
constexpr std::array<double, 8> kTruncSd{0.1668635679, 0.1729769867, 0.1852443625,
                                         0.2109400990, 0.2109400990, 0.1852443625,
                                         0.1729769867, 0.1668635679};

color::ColorScale test_scale() {
  return color::interpolate_scale({88, -10, 40}, {50, 27.583, -48.623});
}

UnderlyingDataset ramp() {
  UnderlyingDataset d;
  for (std::size_t r = 0; r < kGridSize; ++r) {
    for (std::size_t c = 0; c < kGridSize; ++c) d.values[r][c] = static_cast<double>(c + r) / 14.0;
  }
  return d;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Stimuli, BaseCurveClosedForm) {
  const auto v = base_curve();
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(v[i], kBase[i], 1e-11);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(v[i] + v[7 - i], 1.0, 1e-15);
  const auto r = base_curve({}, true);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(r[i], v[7 - i]);
}

TEST(Stimuli, ZeroNoiseGivesBaseColumns) {
  CurveParams p;
  p.noise_sd = 0;
  const auto d = generate_underlying_data(5, false, p);
  for (const auto& row : d.values) {
    for (std::size_t c = 0; c < 8; ++c) EXPECT_NEAR(row[c], kBase[c], 1e-11);
  }
}

TEST(Stimuli, DeterministicAndMirrored) {
  for (std::uint64_t seed : {0ull, 1ull, 99ull, 123456789ull}) {
    const auto a = generate_underlying_data(seed, false);
    const auto b = generate_underlying_data(seed, false);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.seed, seed);
    const auto r = generate_underlying_data(seed, true);
    EXPECT_TRUE(r.reversed);
    for (std::size_t row = 0; row < 8; ++row) {
      for (std::size_t c = 0; c < 8; ++c) EXPECT_EQ(r.values[row][c], a.values[row][7 - c]);
    }
  }
  EXPECT_NE(generate_underlying_data(1, false).values, generate_underlying_data(2, false).values);
}

TEST(Stimuli, ValuesStayInUnitInterval) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto d = generate_underlying_data(seed, seed % 2 == 0);
    for (const auto& row : d.values) {
      for (double v : row) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

TEST(Stimuli, ColumnMeansConvergeToTruncatedNormal) {
  constexpr int kSeeds = 10000;
  std::array<double, 8> sum{};
  for (int s = 0; s < kSeeds; ++s) {
    const auto d = generate_underlying_data(static_cast<std::uint64_t>(s), false);
    for (const auto& row : d.values) {
      for (std::size_t c = 0; c < 8; ++c) sum[c] += row[c];
    }
  }
  const double n = kSeeds * 8.0;
  for (std::size_t c = 0; c < 8; ++c) {
    const double se = kTruncSd[c] / std::sqrt(n);
    EXPECT_NEAR(sum[c] / n, kTruncMean[c], 3 * se) << "column " << c;
  }
}

TEST(Stimuli, InvalidParameters) {
  CurveParams p;
  p.noise_sd = -1;
  EXPECT_THROW(generate_underlying_data(1, false, p), Error);
}

TEST(Stimuli, ValueToStep) {
  EXPECT_EQ(value_to_step(0.0), 0);
  EXPECT_EQ(value_to_step(1.0), 9);
  EXPECT_EQ(value_to_step(0.5), 4);
  EXPECT_EQ(value_to_step(1.5 / 9.0), 2);
  EXPECT_EQ(value_to_step(0.2), 2);
  try {
    value_to_step(1.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::validation);
  }
  EXPECT_THROW(value_to_step(-0.01), Error);
}

TEST(Stimuli, Orientation) {
  EXPECT_EQ(parse_orientation("more_is_light_end"), Orientation::more_is_light_end);
  EXPECT_EQ(parse_orientation(to_string(Orientation::more_is_dark_end)),
            Orientation::more_is_dark_end);
  EXPECT_THROW(parse_orientation("up"), Error);
}

TEST(Stimuli, StimulusSetBalance) {
  const auto set = make_stimulus_set(40, test_scale());
  ASSERT_EQ(set.datasets.size(), kDatasetsPerScale);
  int reversed = 0;
  for (std::size_t i = 0; i < set.datasets.size(); ++i) {
    EXPECT_EQ(set.datasets[i].seed, 40 + i);
    reversed += set.datasets[i].reversed;
    EXPECT_EQ(set.datasets[i].reversed, i < 5);
  }
  EXPECT_EQ(reversed, 5);
}

TEST(Stimuli, DarkerRegionSide) {
  const auto scale = test_scale();
  const auto set = make_stimulus_set(7, scale);
  for (const auto& d : set.datasets) {
    const auto svg = render_colormap_svg(d, scale, Orientation::more_is_dark_end);
    int left = 0, right = 0;
    for (const auto& row : svg.cells) {
      for (std::size_t c = 0; c < 8; ++c) {
        const int lum = row[c].r + row[c].g + row[c].b;
        (c < 4 ? left : right) += lum;
      }
    }
    EXPECT_EQ(d.reversed, left < right) << d.seed;
  }
}

TEST(Svg, AllZeroIsUniformStepZero) {
  const auto scale = test_scale();
  UnderlyingDataset zero;
  const auto out = render_colormap_svg(zero, scale, Orientation::more_is_dark_end);
  const auto light = color::lab_to_srgb(scale.light_endpoint());
  for (const auto& row : out.cells) {
    for (const auto& c : row) EXPECT_EQ(c, light);
  }
  const auto flipped = render_colormap_svg(zero, scale, Orientation::more_is_light_end);
  EXPECT_EQ(flipped.cells[3][3], color::lab_to_srgb(scale.dark_endpoint()));
}

TEST(Svg, Structure) {
  const auto out = render_colormap_svg(ramp(), test_scale(), Orientation::more_is_dark_end);
  EXPECT_EQ(count(out.svg, "<rect "), 65u);
  EXPECT_EQ(count(out.svg, "<text "), 2u);
  EXPECT_NE(out.svg.find("height=\"390\""), std::string::npos);
  EXPECT_NE(out.svg.find("fill=\"#ffffff\""), std::string::npos);
  SvgOptions bare;
  bare.axis_labels = false;
  const auto plain = render_colormap_svg(ramp(), test_scale(), Orientation::more_is_dark_end, bare);
  EXPECT_EQ(count(plain.svg, "<text "), 0u);
  EXPECT_NE(plain.svg.find("height=\"360\""), std::string::npos);
  EXPECT_EQ(plain.cells, out.cells);
}

TEST(Svg, PureFunctionOfInputs) {
  const auto d = generate_underlying_data(77, true);
  const auto a = render_colormap_svg(d, test_scale(), Orientation::more_is_light_end);
  const auto b = render_colormap_svg(generate_underlying_data(77, true), test_scale(),
                                     Orientation::more_is_light_end);
  EXPECT_EQ(a.svg, b.svg);
}

TEST(Svg, MatchesGoldenFile) {
  const auto out = render_colormap_svg(ramp(), test_scale(), Orientation::more_is_dark_end);
  const std::string golden = read_file(std::string(CHROMA_INFER_TEST_GOLDEN_DIR) + "/ramp.svg");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(out.svg, golden);
}
