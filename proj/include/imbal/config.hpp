#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imbal/data.hpp"
#include "imbal/losses.hpp"
#include "imbal/train.hpp"
#include "imbal/weights.hpp"

namespace imbal {

/// Declarative description of a full training run. Parsed from JSON with
/// schema validation up front; unknown keys are rejected.
struct RunConfig {
  std::vector<std::string> patterns;
  WeightConfig weighting;
  std::optional<std::vector<double>> beta_grid;  // overrides weighting.beta
  FocalConfig focal;
  LossKind loss_kind = LossKind::Focal;
  NetConfig net;
  StagePlan plan;
  SplitSpec split;
  std::uint64_t seed = 0;
  std::string dataset_stem;
  std::string output_dir;

  static RunConfig from_json_file(const std::string& path);
  static RunConfig from_json_text(const std::string& text);
};

SynthSpec synth_spec_from_json_file(const std::string& path);
SynthSpec synth_spec_from_json_text(const std::string& text);

}  // namespace imbal
