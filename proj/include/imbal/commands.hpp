#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imbal/config.hpp"

namespace imbal {

/// High-level pipelines behind the CLI subcommands. Each writes its outputs
/// under `out_dir` and returns the paths it produced. Validation problems
/// raise std::invalid_argument, runtime failures std::runtime_error.

struct ComputeWeightsArgs {
  std::string labels_csv;
  std::optional<std::string> train_list;  // restrict counts to these ids
  std::vector<double> betas;              // empty -> the five presets
  WeightScheme scheme = WeightScheme::EffectiveNumber;
  double negative_floor = 0.0;
  std::string out_dir;
  bool verbose = false;
};
std::vector<std::string> cmd_compute_weights(const ComputeWeightsArgs& args);

std::vector<std::string> cmd_gen_data(const std::string& spec_path,
                                      const std::string& out_dir, bool verbose = false);

struct TrainOutputs {
  std::string log_path;
  std::string manifest_path;
  std::string weights_path;
  std::vector<std::string> checkpoint_paths;
};
TrainOutputs cmd_train(const RunConfig& config, const std::string& out_dir,
                       bool verbose = false);

struct EvaluateArgs {
  std::string checkpoint;
  std::string dataset_stem;
  std::string manifest;           // split manifest CSV from a training run
  std::string subset = "test";    // train | val | test
  std::string out_dir;
  bool curves = true;
  bool verbose = false;
};
std::string cmd_evaluate(const EvaluateArgs& args);

/// Train+evaluate per fold, then a per-pattern mean/stddev summary CSV.
std::string cmd_kfold(const RunConfig& config, const std::string& out_dir,
                      bool verbose = false);

}  // namespace imbal
