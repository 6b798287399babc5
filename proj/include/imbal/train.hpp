#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "imbal/data.hpp"
#include "imbal/losses.hpp"
#include "imbal/metrics.hpp"
#include "imbal/nn.hpp"
#include "imbal/optim.hpp"

namespace imbal {

struct StageSpec {
  int input_size = 14;
  int batch_size = 32;
  int epochs = 3;
  enum class Init { Fresh, FromBestCheckpoint } init = Init::Fresh;
  OptimizerConfig optimizer;
};

struct StagePlan {
  std::vector<StageSpec> stages;

  /// Stage sizes must be strictly increasing; batch sizes positive.
  void validate() const;
};

struct LogRow {
  int stage = 0;
  int epoch = 0;
  double train_loss = 0.0;
  double val_macro_auroc = 0.0;
  double seconds = 0.0;
};

/// `stage,epoch,train_loss,val_macro_auroc,seconds`
void write_training_log(std::ostream& out, const std::vector<LogRow>& rows);

struct Checkpoint {
  std::uint32_t version = 1;
  NetConfig net_config;
  ParamMap params;
  OptimizerConfig optimizer_config;
  long long optimizer_step = 0;
  ParamMap optimizer_m, optimizer_v, optimizer_slow;
  int stage_index = 0;
  int epoch = 0;
  std::uint64_t seed = 0;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

/// Per-pattern scored columns from running the net over a dataset.
std::vector<ScoredColumn> score_dataset(const MiniNet& net, const Dataset& data,
                                        int batch_size = 64);

struct StageResult {
  MiniNet best_net;
  double best_val_auroc = 0.0;
  int best_epoch = 0;
  std::vector<LogRow> log;
};

/// Trains one stage. Data is resampled to the stage's input size; "best"
/// means highest validation macro-AUROC with ties going to the earlier
/// epoch. Aborts with a diagnostic on non-finite loss.
StageResult train_stage(MiniNet net, const StageSpec& stage, int stage_index,
                        const Dataset& train_data, const Dataset& val_data,
                        const WeightTable& weights, const FocalConfig& focal,
                        LossKind loss_kind, std::uint64_t seed);

struct TrainOptions {
  NetConfig net;
  StagePlan plan;
  WeightTable weights;
  FocalConfig focal;
  LossKind loss_kind = LossKind::Focal;
  std::uint64_t seed = 0;
  /// When set, the best checkpoint of each stage is written here as
  /// stage<N>.ckpt.
  std::optional<std::string> checkpoint_dir;
};

struct TrainResult {
  MiniNet final_net;
  std::vector<LogRow> log;
  std::vector<std::string> checkpoint_paths;
  std::vector<double> stage_final_val_auroc;
};

/// Runs the whole plan; stage s > 0 starts from the best checkpoint of
/// stage s-1 when its init mode says so.
TrainResult run_stage_plan(const TrainOptions& options, const Dataset& train_data,
                           const Dataset& val_data);

}  // namespace imbal
