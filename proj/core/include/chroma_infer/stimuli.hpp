#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chroma_infer/color.hpp"

namespace chroma_infer::stimuli {

inline constexpr std::size_t kGridSize = 8;

/// Arctangent trend sampled at bin centers t_i = steepness * (i - center).
struct CurveParams {
  double steepness = 1.0;
  double center = 4.5;
  double noise_sd = 0.25;
};

/// values[row][column], each in [0, 1].
using Grid = std::array<std::array<double, kGridSize>, kGridSize>;

struct UnderlyingDataset {
  Grid values{};
  bool reversed = false;
  std::uint64_t seed = 0;
};

/// Per-column base values 0.5 + atan(t_i) / pi, left to right.
std::array<double, kGridSize> base_curve(const CurveParams& params = {}, bool reversed = false);

/// Each cell is drawn from Normal(base, noise_sd), redrawn until it lands in
/// [0, 1]. A reversed dataset is the exact column mirror of the unreversed
/// dataset with the same seed.
UnderlyingDataset generate_underlying_data(std::uint64_t seed, bool reversed,
                                           const CurveParams& params = {});

/// round(v * 9) with ties to even. Throws ErrorCode::validation outside [0, 1].
int value_to_step(double v);

/// Which scale endpoint represents the data value 1.
enum class Orientation { more_is_dark_end, more_is_light_end };

std::string_view to_string(Orientation o);
Orientation parse_orientation(std::string_view text);

inline constexpr std::size_t kDatasetsPerScale = 10;

struct StimulusSet {
  std::vector<UnderlyingDataset> datasets;
  color::ColorScale scale;
};

/// Ten datasets seeded base_seed .. base_seed + 9. The first five are
/// reversed (darker region on the left under more_is_dark_end).
StimulusSet make_stimulus_set(std::uint64_t base_seed, const color::ColorScale& scale,
                              const CurveParams& params = {});

struct SvgOptions {
  bool axis_labels = true;
  color::WhitePoint white_point = color::WhitePoint::d65();
};

struct SvgStimulus {
  std::string svg;
  std::array<std::array<color::Srgb8, kGridSize>, kGridSize> cells{};
};

/// Colormap as an 8x8 grid of rects centered on a white square, with optional
/// "Left"/"Right" axis labels. Output is a pure function of the inputs.
SvgStimulus render_colormap_svg(const UnderlyingDataset& data, const color::ColorScale& scale,
                                Orientation orientation, const SvgOptions& options = {});

}  // namespace chroma_infer::stimuli
