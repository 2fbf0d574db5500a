#pragma once

#include <chroma_infer/associations.hpp>
#include <chroma_infer/color.hpp>
#include <chroma_infer/scales.hpp>
#include <chroma_infer/stimuli.hpp>
#include <cstdint>
#include <filesystem>
#include <optional>

namespace chroma_infer::app {

namespace fs = std::filesystem;

struct Config {
  fs::path palette;
  std::optional<fs::path> ratings;
  std::optional<fs::path> responses;
  std::optional<fs::path> scales;
  std::optional<fs::path> darkness;
  color::WhitePoint white_point = color::WhitePoint::d65();
  stimuli::CurveParams curve;
  double grid_increment = 0.05;
  std::uint64_t seed = 1;
  fs::path output_dir = "out";
  scales::PairConstraints pair_constraints;
  std::optional<associations::AttentionCheckSpec> attention_check;

  /// Checks that every configured file exists and the grid increment divides 1.
  void validate() const;
};

/// CHROMA_INFER_DATA when set, otherwise the source tree's data directory.
fs::path data_dir();

/// Relative paths in the file resolve against the file's directory.
Config load_config(const fs::path& path);

/// The bundled palette plus the demo dataset, when present.
Config default_config();

}  // namespace chroma_infer::app
