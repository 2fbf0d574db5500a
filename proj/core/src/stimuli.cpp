#include "chroma_infer/stimuli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "chroma_infer/error.hpp"

namespace chroma_infer::stimuli {

std::array<double, kGridSize> base_curve(const CurveParams& params, bool reversed) {
  std::array<double, kGridSize> v{};
  for (std::size_t i = 0; i < kGridSize; ++i) {
    const double t = params.steepness * (static_cast<double>(i + 1) - params.center);
    v[i] = 0.5 + std::atan(t) / std::numbers::pi;
  }
  if (reversed) std::reverse(v.begin(), v.end());
  return v;
}

UnderlyingDataset generate_underlying_data(std::uint64_t seed, bool reversed,
                                           const CurveParams& params) {
  if (!std::isfinite(params.steepness) || !std::isfinite(params.center) ||
      !(params.noise_sd >= 0.0) || !std::isfinite(params.noise_sd)) {
    throw Error(ErrorCode::validation, "invalid curve parameters");
  }
  const auto base = base_curve(params, false);
  UnderlyingDataset data;
  data.seed = seed;
  data.reversed = reversed;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  // Column-major draw order so the generator stream maps to columns.
  for (std::size_t col = 0; col < kGridSize; ++col) {
    for (std::size_t row = 0; row < kGridSize; ++row) {
      double v = base[col];
      if (params.noise_sd > 0.0) {
        do {
          v = base[col] + params.noise_sd * noise(rng);
        } while (v < 0.0 || v > 1.0);
      }
      data.values[row][col] = v;
    }
  }
  if (reversed) {
    for (auto& row : data.values) std::reverse(row.begin(), row.end());
  }
  return data;
}

int value_to_step(double v) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw Error(ErrorCode::validation, "data value outside [0, 1]");
  }
  return static_cast<int>(std::nearbyint(v * 9.0));
}

std::string_view to_string(Orientation o) {
  return o == Orientation::more_is_dark_end ? "more_is_dark_end" : "more_is_light_end";
}

Orientation parse_orientation(std::string_view text) {
  if (text == "more_is_dark_end" || text == "dark") return Orientation::more_is_dark_end;
  if (text == "more_is_light_end" || text == "light") return Orientation::more_is_light_end;
  throw Error(ErrorCode::parse, "unknown orientation '" + std::string(text) + "'");
}

StimulusSet make_stimulus_set(std::uint64_t base_seed, const color::ColorScale& scale,
                              const CurveParams& params) {
  StimulusSet set{{}, scale};
  set.datasets.reserve(kDatasetsPerScale);
  for (std::size_t i = 0; i < kDatasetsPerScale; ++i) {
    set.datasets.push_back(
        generate_underlying_data(base_seed + i, i < kDatasetsPerScale / 2, params));
  }
  return set;
}

SvgStimulus render_colormap_svg(const UnderlyingDataset& data, const color::ColorScale& scale,
                                Orientation orientation, const SvgOptions& options) {
  constexpr int cell = 30;
  constexpr int square = 360;
  constexpr int margin = (square - cell * static_cast<int>(kGridSize)) / 2;
  const int height = options.axis_labels ? square + 30 : square;

  std::array<color::Srgb8, color::kScaleSteps> palette;
  for (std::size_t i = 0; i < color::kScaleSteps; ++i) {
    palette[i] = color::lab_to_srgb(scale.steps()[i], options.white_point);
  }

  SvgStimulus out;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << square
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << square << ' ' << height << "\">\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << square << "\" height=\"" << square
      << "\" fill=\"#ffffff\"/>\n"
      << "  <g shape-rendering=\"crispEdges\">\n";
  for (std::size_t row = 0; row < kGridSize; ++row) {
    for (std::size_t col = 0; col < kGridSize; ++col) {
      int step = value_to_step(data.values[row][col]);
      if (orientation == Orientation::more_is_light_end) step = 9 - step;
      const color::Srgb8 c = palette[static_cast<std::size_t>(step)];
      out.cells[row][col] = c;
      svg << "    <rect x=\"" << margin + static_cast<int>(col) * cell << "\" y=\""
          << margin + static_cast<int>(row) * cell << "\" width=\"" << cell << "\" height=\""
          << cell << "\" fill=\"" << c.hex() << "\"/>\n";
    }
  }
  svg << "  </g>\n";
  if (options.axis_labels) {
    svg << "  <g font-family=\"sans-serif\" font-size=\"16\" fill=\"#000000\">\n"
        << "    <text x=\"" << margin << "\" y=\"" << square + 20 << "\">Left</text>\n"
        << "    <text x=\"" << square - margin << "\" y=\"" << square + 20
        << "\" text-anchor=\"end\">Right</text>\n"
        << "  </g>\n";
  }
  svg << "</svg>\n";
  out.svg = svg.str();
  return out;
}

}  // namespace chroma_infer::stimuli
