#pragma once

#include <chroma_infer/associations.hpp>
#include <chroma_infer/eval.hpp>
#include <chroma_infer/inference.hpp>
#include <chroma_infer/palette.hpp>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "workspace.hpp"

namespace chroma_infer::app {

struct DemoOptions {
  std::uint64_t seed = 20240601;
  std::size_t raters = 36;
  std::size_t inattentive_raters = 4;
  std::size_t scales_per_domain = 21;
  std::size_t participants_per_scale = 20;
  std::size_t trials = 10;
  inference::WeightPair weights = inference::kDefaultWeights;
};

struct DemoData {
  std::vector<associations::RatingRecord> ratings;
  std::vector<ScaleSpec> scales;
  std::vector<eval::ResponseRecord> responses;
  associations::AttentionCheckSpec attention_check;
};

inline const std::vector<std::string> kDemoDomains = {"fire", "water", "ice"};

/// Synthetic association ratings from smooth hue/chroma/lightness profiles,
/// scales drawn from the lightness-filtered UW-71 pairs, and colormap
/// responses simulated from the model at `options.weights`.
DemoData generate_demo(const color::Palette& palette, const DemoOptions& options = {});

/// Writes ratings.csv, scales.csv, responses.csv and config.json.
void write_demo(const DemoData& data, const std::filesystem::path& dir,
                const std::filesystem::path& palette_path);

}  // namespace chroma_infer::app
