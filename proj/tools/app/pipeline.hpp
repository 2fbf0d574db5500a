#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "workspace.hpp"

namespace chroma_infer::app {

struct ArtifactFile {
  std::string path;  // relative to the output directory
  std::uintmax_t bytes = 0;
  std::string fnv1a;
};

struct StageReport {
  std::string stage;
  std::vector<ArtifactFile> files;
};

struct PipelineReport {
  fs::path output_dir;
  std::vector<StageReport> stages;
};

/// Runs fits, pairs, scales, stimuli, predictions and (with responses) the
/// weight search and evaluation, then writes manifest.json. A failing stage
/// aborts with its name in the message.
PipelineReport run_pipeline(const Workspace& ws, const fs::path& output_dir);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

nlohmann::json to_json(const PipelineReport& r);

}  // namespace chroma_infer::app
