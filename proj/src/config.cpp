#include "imbal/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace imbal {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!obj.is_object())
    throw std::invalid_argument("config: " + where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
}

WeightScheme scheme_from_string(const std::string& s) {
  if (s == "effective_number") return WeightScheme::EffectiveNumber;
  if (s == "prevalence") return WeightScheme::Prevalence;
  if (s == "uniform") return WeightScheme::Uniform;
  throw std::invalid_argument("config: unknown weighting scheme '" + s + "'");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: JSON parse error in " + path + ": " + e.what());
  }
  return j;
}

OptimizerConfig parse_optimizer(const json& j) {
  reject_unknown_keys(j, {"kind", "lr", "beta1", "beta2", "eps", "lookahead_k",
                          "lookahead_alpha"},
                      "optimizer");
  OptimizerConfig cfg;
  cfg.kind = optimizer_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("lr")) cfg.lr = j.at("lr").get<double>();
  if (j.contains("beta1")) cfg.beta1 = j.at("beta1").get<double>();
  if (j.contains("beta2")) cfg.beta2 = j.at("beta2").get<double>();
  if (j.contains("eps")) cfg.eps = j.at("eps").get<double>();
  if (j.contains("lookahead_k")) cfg.lookahead_k = j.at("lookahead_k").get<int>();
  if (j.contains("lookahead_alpha")) cfg.lookahead_alpha = j.at("lookahead_alpha").get<double>();
  cfg.validate();
  return cfg;
}

SplitSpec parse_split(const json& j) {
  reject_unknown_keys(j, {"kind", "train_val_list", "test_list", "val_fraction", "k",
                          "fold", "train", "val", "test", "seed", "patient_grouped"},
                      "split");
  SplitSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "official") {
    spec.kind = SplitKind::OfficialStyle;
    for (const auto& id : j.at("train_val_list")) spec.train_val_ids.push_back(id.get<std::string>());
    for (const auto& id : j.at("test_list")) spec.test_ids.push_back(id.get<std::string>());
    if (j.contains("val_fraction")) spec.val_fraction = j.at("val_fraction").get<double>();
  } else if (kind == "kfold") {
    spec.kind = SplitKind::KFold;
    spec.k = j.at("k").get<int>();
    if (j.contains("fold")) spec.fold = j.at("fold").get<int>();
  } else if (kind == "ratio") {
    spec.kind = SplitKind::Ratio;
    spec.train_ratio = j.at("train").get<double>();
    spec.val_ratio = j.at("val").get<double>();
    spec.test_ratio = j.at("test").get<double>();
  } else {
    throw std::invalid_argument("config: unknown split kind '" + kind + "'");
  }
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("patient_grouped")) spec.patient_grouped = j.at("patient_grouped").get<bool>();
  spec.validate();
  return spec;
}

RunConfig parse_run_config(const json& j) {
  reject_unknown_keys(j, {"patterns", "weighting", "focal", "loss", "net", "stages",
                          "split", "seed", "dataset", "output_dir"},
                      "run config");
  RunConfig cfg;
  for (const auto& p : j.at("patterns")) cfg.patterns.push_back(p.get<std::string>());
  if (cfg.patterns.empty()) throw std::invalid_argument("config: patterns must be non-empty");

  const json& w = j.at("weighting");
  reject_unknown_keys(w, {"scheme", "beta", "beta_grid", "negative_floor"}, "weighting");
  cfg.weighting.scheme = scheme_from_string(w.at("scheme").get<std::string>());
  if (w.contains("beta") && w.contains("beta_grid"))
    throw std::invalid_argument("config: give either beta or beta_grid, not both");
  if (w.contains("beta")) cfg.weighting.beta = w.at("beta").get<double>();
  if (w.contains("beta_grid")) {
    std::vector<double> grid;
    for (const auto& b : w.at("beta_grid")) grid.push_back(b.get<double>());
    cfg.beta_grid = grid;
  }
  if (w.contains("negative_floor"))
    cfg.weighting.negative_floor = w.at("negative_floor").get<double>();
  cfg.weighting.validate();

  if (j.contains("focal")) {
    const json& f = j.at("focal");
    reject_unknown_keys(f, {"alpha", "gamma", "prob_epsilon"}, "focal");
    if (f.contains("alpha")) cfg.focal.alpha = f.at("alpha").get<double>();
    if (f.contains("gamma")) cfg.focal.gamma = f.at("gamma").get<double>();
    if (f.contains("prob_epsilon")) cfg.focal.prob_epsilon = f.at("prob_epsilon").get<double>();
    cfg.focal.validate();
  }
  if (j.contains("loss")) {
    const std::string loss = j.at("loss").get<std::string>();
    if (loss == "bce")
      cfg.loss_kind = LossKind::BCE;
    else if (loss == "focal")
      cfg.loss_kind = LossKind::Focal;
    else
      throw std::invalid_argument("config: unknown loss '" + loss + "'");
  }

  const json& n = j.at("net");
  reject_unknown_keys(n, {"in_channels", "channels", "activation"}, "net");
  if (n.contains("in_channels")) cfg.net.in_channels = n.at("in_channels").get<int>();
  cfg.net.channels.clear();
  for (const auto& ch : n.at("channels")) cfg.net.channels.push_back(ch.get<int>());
  if (n.contains("activation"))
    cfg.net.activation = activation_from_string(n.at("activation").get<std::string>());
  cfg.net.num_classes = static_cast<int>(cfg.patterns.size());
  cfg.net.validate();

  for (const auto& s : j.at("stages")) {
    reject_unknown_keys(s, {"input_size", "batch_size", "epochs", "init", "optimizer"},
                        "stage");
    StageSpec stage;
    stage.input_size = s.at("input_size").get<int>();
    stage.batch_size = s.at("batch_size").get<int>();
    stage.epochs = s.at("epochs").get<int>();
    if (s.contains("init")) {
      const std::string init = s.at("init").get<std::string>();
      if (init == "fresh")
        stage.init = StageSpec::Init::Fresh;
      else if (init == "from_best_checkpoint")
        stage.init = StageSpec::Init::FromBestCheckpoint;
      else
        throw std::invalid_argument("config: unknown stage init '" + init + "'");
    } else if (!cfg.plan.stages.empty()) {
      stage.init = StageSpec::Init::FromBestCheckpoint;
    }
    stage.optimizer = parse_optimizer(s.at("optimizer"));
    cfg.plan.stages.push_back(stage);
  }
  cfg.plan.validate();

  cfg.split = parse_split(j.at("split"));
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.dataset_stem = j.at("dataset").get<std::string>();
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  return cfg;
}

SynthSpec parse_synth_spec(const json& j) {
  reject_unknown_keys(j, {"patterns", "side", "channels", "count", "seed", "correlated"},
                      "synthetic spec");
  SynthSpec spec;
  for (const auto& p : j.at("patterns")) {
    reject_unknown_keys(p, {"name", "prevalence", "blob_sigma", "blob_amplitude"},
                        "synthetic pattern");
    SynthPattern pat;
    pat.name = p.at("name").get<std::string>();
    pat.prevalence = p.at("prevalence").get<double>();
    if (p.contains("blob_sigma")) pat.blob_sigma = p.at("blob_sigma").get<double>();
    if (p.contains("blob_amplitude")) pat.blob_amplitude = p.at("blob_amplitude").get<double>();
    spec.patterns.push_back(pat);
  }
  if (j.contains("side")) spec.side = j.at("side").get<int>();
  if (j.contains("channels")) spec.channels = j.at("channels").get<int>();
  spec.count = j.at("count").get<int>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("correlated")) spec.correlated = j.at("correlated").get<bool>();
  spec.validate();
  return spec;
}

}  // namespace

RunConfig RunConfig::from_json_file(const std::string& path) {
  return parse_run_config(load_json(path));
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  return parse_run_config(json::parse(text));
}

SynthSpec synth_spec_from_json_file(const std::string& path) {
  return parse_synth_spec(load_json(path));
}

SynthSpec synth_spec_from_json_text(const std::string& text) {
  return parse_synth_spec(json::parse(text));
}

}  // namespace imbal
