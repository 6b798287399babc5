#include "imbal/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "imbal/metrics.hpp"
#include "imbal/train.hpp"

namespace imbal {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const std::string& dir) {
  if (dir.empty()) throw std::invalid_argument("output directory not set");
  fs::create_directories(dir);
}

std::vector<std::string> read_id_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open list file " + path);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

std::string beta_tag(double beta) {
  std::ostringstream os;
  os << std::setprecision(10) << beta;
  std::string tag = os.str();
  std::replace(tag.begin(), tag.end(), '.', 'p');
  return tag;
}

void warn_clamped(const WeightTable& table, bool verbose) {
  if (table.clamped.empty()) return;
  std::cerr << "warning: negative weight clamped to floor for:";
  for (std::size_t k : table.clamped) std::cerr << ' ' << table.pattern_names[k];
  std::cerr << '\n';
  (void)verbose;
}

WeightTable table_for_config(const RunConfig& config, const Dataset& train_data) {
  if (config.weighting.scheme == WeightScheme::Uniform) {
    WeightTable t = WeightTable::uniform(config.patterns.size());
    t.pattern_names = config.patterns;
    return t;
  }
  const ClassCounts counts = class_counts(train_data.records(), train_data.pattern_names);
  return build_weight_table(counts, config.weighting);
}

const std::vector<std::string>& subset_ids(const SplitResult& split,
                                           const std::string& subset) {
  if (subset == "train") return split.train;
  if (subset == "val") return split.val;
  if (subset == "test") return split.test;
  throw std::invalid_argument("unknown subset '" + subset + "'");
}

}  // namespace

std::vector<std::string> cmd_compute_weights(const ComputeWeightsArgs& args) {
  ensure_dir(args.out_dir);
  std::ifstream in(args.labels_csv);
  if (!in) throw std::invalid_argument("cannot open labels file " + args.labels_csv);
  const auto records = parse_labels(in, chest_xray14_patterns());

  std::set<std::string> membership;
  const std::set<std::string>* member_ptr = nullptr;
  if (args.train_list) {
    for (const auto& id : read_id_list(*args.train_list)) membership.insert(id);
    member_ptr = &membership;
  }
  const ClassCounts counts = class_counts(records, chest_xray14_patterns(), member_ptr);

  std::vector<double> betas = args.betas;
  if (betas.empty()) betas = beta_grid_presets();
  if (args.scheme != WeightScheme::EffectiveNumber) betas.resize(1);

  std::vector<std::string> paths;
  for (double beta : betas) {
    WeightConfig cfg;
    cfg.beta = beta;
    cfg.scheme = args.scheme;
    cfg.negative_floor = args.negative_floor;
    const WeightTable table = build_weight_table(counts, cfg);
    warn_clamped(table, args.verbose);

    std::string name = "weights";
    if (args.scheme == WeightScheme::EffectiveNumber) name += "_beta_" + beta_tag(beta);
    const std::string path = args.out_dir + "/" + name + ".csv";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_weight_csv(out, table);
    paths.push_back(path);
    if (args.verbose) std::cerr << "wrote " << path << '\n';
  }
  return paths;
}

std::vector<std::string> cmd_gen_data(const std::string& spec_path,
                                      const std::string& out_dir, bool verbose) {
  ensure_dir(out_dir);
  const SynthSpec spec = synth_spec_from_json_file(spec_path);
  std::vector<std::string> warnings;
  const Dataset data = generate_synthetic(spec, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  const std::string stem = out_dir + "/dataset";
  save_dataset(data, stem);
  if (verbose)
    std::cerr << "generated " << data.size() << " samples, " << data.num_classes()
              << " patterns -> " << stem << ".tensors.bin\n";
  return {stem + ".tensors.bin", stem + ".labels.csv"};
}

TrainOutputs cmd_train(const RunConfig& config, const std::string& out_dir, bool verbose) {
  ensure_dir(out_dir);
  const Dataset data = load_dataset(config.dataset_stem);
  if (data.pattern_names != config.patterns)
    throw std::invalid_argument("train: dataset pattern vocabulary does not match config");

  const SplitResult split = make_split(data.records(), config.split);
  const Dataset train_data = data.subset(split.train);
  const Dataset val_data = data.subset(split.val);

  const WeightTable table = table_for_config(config, train_data);
  warn_clamped(table, verbose);

  TrainOptions options;
  options.net = config.net;
  options.plan = config.plan;
  options.weights = table;
  options.focal = config.focal;
  options.loss_kind = config.loss_kind;
  options.seed = config.seed;
  options.checkpoint_dir = out_dir;
  const TrainResult result = run_stage_plan(options, train_data, val_data);

  TrainOutputs outputs;
  outputs.manifest_path = out_dir + "/split_manifest.csv";
  {
    std::ofstream out(outputs.manifest_path);
    write_split_manifest(out, split);
  }
  outputs.weights_path = out_dir + "/weights.csv";
  {
    std::ofstream out(outputs.weights_path);
    write_weight_csv(out, table);
  }
  outputs.log_path = out_dir + "/training_log.csv";
  {
    std::ofstream out(outputs.log_path);
    write_training_log(out, result.log);
  }
  outputs.checkpoint_paths = result.checkpoint_paths;
  if (verbose)
    for (const LogRow& row : result.log)
      std::cerr << "stage " << row.stage << " epoch " << row.epoch << " loss "
                << row.train_loss << " val auroc " << row.val_macro_auroc << '\n';
  return outputs;
}

std::string cmd_evaluate(const EvaluateArgs& args) {
  ensure_dir(args.out_dir);
  const Checkpoint ckpt = load_checkpoint(args.checkpoint);
  MiniNet net;
  net.cfg = ckpt.net_config;
  net.params = ckpt.params;

  const Dataset data = load_dataset(args.dataset_stem);
  if (static_cast<int>(data.num_classes()) != net.cfg.num_classes)
    throw std::invalid_argument("evaluate: checkpoint/dataset class count mismatch");

  std::ifstream min(args.manifest);
  if (!min) throw std::invalid_argument("cannot open manifest " + args.manifest);
  const SplitResult split = read_split_manifest(min);
  const Dataset subset = data.subset(subset_ids(split, args.subset));

  const auto columns = score_dataset(net, subset);
  std::vector<std::string> warnings;
  const EvalReport report = build_report(columns, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  const std::string report_path = args.out_dir + "/report.csv";
  {
    std::ofstream out(report_path);
    write_report_csv(out, report);
  }
  if (args.curves) {
    for (const auto& col : columns) {
      if (col.count_positives() == 0 || col.count_negatives() == 0) continue;
      {
        std::ofstream out(args.out_dir + "/roc_" + col.pattern_name + ".csv");
        write_roc_csv(out, roc_points(col));
      }
      {
        std::ofstream out(args.out_dir + "/pr_" + col.pattern_name + ".csv");
        write_pr_csv(out, pr_points(col));
      }
    }
  }
  if (args.verbose) std::cerr << "macro auroc " << report.macro_auroc << '\n';
  return report_path;
}

std::string cmd_kfold(const RunConfig& config, const std::string& out_dir, bool verbose) {
  if (config.split.kind != SplitKind::KFold)
    throw std::invalid_argument("kfold: config split kind must be kfold");
  ensure_dir(out_dir);

  const std::size_t c = config.patterns.size();
  std::vector<std::vector<double>> fold_auroc(c), fold_auprc(c);
  std::vector<double> fold_macro;

  for (int fold = 0; fold < config.split.k; ++fold) {
    RunConfig fold_config = config;
    fold_config.split.fold = fold;
    const std::string fold_dir = out_dir + "/fold" + std::to_string(fold);
    TrainOutputs outputs;
    try {
      outputs = cmd_train(fold_config, fold_dir, verbose);
    } catch (const std::exception& e) {
      throw std::runtime_error("kfold: fold " + std::to_string(fold) + " failed: " + e.what());
    }
    EvaluateArgs eval;
    eval.checkpoint = outputs.checkpoint_paths.back();
    eval.dataset_stem = config.dataset_stem;
    eval.manifest = outputs.manifest_path;
    eval.subset = "test";
    eval.out_dir = fold_dir;
    eval.curves = false;
    eval.verbose = verbose;
    cmd_evaluate(eval);

    // reread the fold report to collect per-pattern values
    const Checkpoint ckpt = load_checkpoint(outputs.checkpoint_paths.back());
    MiniNet net;
    net.cfg = ckpt.net_config;
    net.params = ckpt.params;
    const Dataset data = load_dataset(config.dataset_stem);
    std::ifstream min(outputs.manifest_path);
    const SplitResult split = read_split_manifest(min);
    const auto columns = score_dataset(net, data.subset(split.test));
    const EvalReport report = build_report(columns);
    for (std::size_t k = 0; k < c; ++k) {
      if (!report.rows[k].defined) continue;
      fold_auroc[k].push_back(report.rows[k].auroc);
      fold_auprc[k].push_back(report.rows[k].auprc);
    }
    fold_macro.push_back(report.macro_auroc);
  }

  const auto mean_sd = [](const std::vector<double>& xs) {
    if (xs.empty()) return std::pair<double, double>{0.0, 0.0};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    const double sd = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
    return std::pair<double, double>{mean, sd};
  };

  const std::string summary_path = out_dir + "/summary.csv";
  std::ofstream out(summary_path);
  if (!out) throw std::runtime_error("cannot write " + summary_path);
  out << "pattern,folds,mean_auroc,sd_auroc,mean_auprc,sd_auprc\n" << std::setprecision(17);
  for (std::size_t k = 0; k < c; ++k) {
    const auto [ma, sa] = mean_sd(fold_auroc[k]);
    const auto [mp, sp] = mean_sd(fold_auprc[k]);
    out << config.patterns[k] << ',' << fold_auroc[k].size() << ',' << ma << ',' << sa
        << ',' << mp << ',' << sp << '\n';
  }
  const auto [mm, ms] = mean_sd(fold_macro);
  out << "AVERAGE," << fold_macro.size() << ',' << mm << ',' << ms << ",,\n";
  return summary_path;
}

}  // namespace imbal
