#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imbal/commands.hpp"

namespace {

// 0 success, 1 validation error, 2 runtime failure
int run(int argc, char** argv) {
  CLI::App app{"Class-balanced multilabel training toolkit"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool verbose = false;
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Override the config seed")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_flag("--verbose", verbose, "Chatty progress output");

  // compute-weights
  auto* cw = app.add_subcommand("compute-weights",
                                "Build per-pattern weight tables from a label CSV");
  imbal::ComputeWeightsArgs cw_args;
  std::string cw_scheme = "effective_number";
  bool cw_grid = false;
  cw->add_option("--labels", cw_args.labels_csv, "Label CSV (Image Index,Finding Labels)")
      ->required();
  std::string cw_train_list;
  cw->add_option("--train-list", cw_train_list, "Restrict counts to ids in this list file");
  cw->add_option("--beta", cw_args.betas, "Explicit beta value(s)");
  cw->add_flag("--beta-grid", cw_grid, "Use the five preset beta values");
  cw->add_option("--scheme", cw_scheme, "effective_number | prevalence | uniform")
      ->capture_default_str();
  cw->add_option("--negative-floor", cw_args.negative_floor,
                 "Lower clamp for negative weights")
      ->capture_default_str();

  // gen-data
  auto* gd = app.add_subcommand("gen-data", "Generate a synthetic imbalanced dataset");
  std::string gd_spec;
  gd->add_option("--spec", gd_spec, "Synthetic spec JSON")->required();

  // train
  auto* tr = app.add_subcommand("train", "Run the staged training plan from a config");
  std::string tr_config;
  tr->add_option("--config", tr_config, "Run config JSON")->required();

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Evaluate a checkpoint on a dataset subset");
  imbal::EvaluateArgs ev_args;
  ev->add_option("--checkpoint", ev_args.checkpoint, "Checkpoint file")->required();
  ev->add_option("--dataset", ev_args.dataset_stem, "Dataset stem")->required();
  ev->add_option("--manifest", ev_args.manifest, "Split manifest CSV")->required();
  ev->add_option("--subset", ev_args.subset, "train | val | test")->capture_default_str();
  ev->add_flag("!--no-curves", ev_args.curves, "Skip ROC/PR curve point files");

  // kfold
  auto* kf = app.add_subcommand("kfold", "Cross-validated train+evaluate with a summary");
  std::string kf_config;
  kf->add_option("--config", kf_config, "Run config JSON (split kind must be kfold)")
      ->required();

  // let the global --out/--seed/--verbose appear after the subcommand too
  for (CLI::App* sub : {cw, gd, tr, ev, kf}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cw->parsed()) {
      cw_args.out_dir = out_dir;
      cw_args.verbose = verbose;
      cw_args.scheme = [&] {
        if (cw_scheme == "effective_number") return imbal::WeightScheme::EffectiveNumber;
        if (cw_scheme == "prevalence") return imbal::WeightScheme::Prevalence;
        if (cw_scheme == "uniform") return imbal::WeightScheme::Uniform;
        throw std::invalid_argument("unknown scheme '" + cw_scheme + "'");
      }();
      if (!cw_train_list.empty()) cw_args.train_list = cw_train_list;
      if (cw_grid && !cw_args.betas.empty())
        throw std::invalid_argument("give either --beta or --beta-grid, not both");
      imbal::cmd_compute_weights(cw_args);
    } else if (gd->parsed()) {
      imbal::cmd_gen_data(gd_spec, out_dir, verbose);
    } else if (tr->parsed()) {
      imbal::RunConfig config = imbal::RunConfig::from_json_file(tr_config);
      if (seed_set) config.seed = seed;
      if (!config.output_dir.empty() && out_dir == "out") out_dir = config.output_dir;
      imbal::cmd_train(config, out_dir, verbose);
    } else if (ev->parsed()) {
      ev_args.out_dir = out_dir;
      ev_args.verbose = verbose;
      imbal::cmd_evaluate(ev_args);
    } else if (kf->parsed()) {
      imbal::RunConfig config = imbal::RunConfig::from_json_file(kf_config);
      if (seed_set) config.seed = seed;
      if (!config.output_dir.empty() && out_dir == "out") out_dir = config.output_dir;
      imbal::cmd_kfold(config, out_dir, verbose);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
