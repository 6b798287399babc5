#include "imbal/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace imbal {

void StagePlan::validate() const {
  if (stages.empty()) throw std::invalid_argument("StagePlan: at least one stage required");
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const StageSpec& st = stages[s];
    if (st.batch_size < 1) throw std::invalid_argument("StagePlan: batch sizes must be positive");
    if (st.epochs < 1) throw std::invalid_argument("StagePlan: epochs must be >= 1");
    if (st.input_size < 1) throw std::invalid_argument("StagePlan: input sizes must be positive");
    if (s > 0 && st.input_size <= stages[s - 1].input_size)
      throw std::invalid_argument("StagePlan: stage input sizes must be strictly increasing");
    st.optimizer.validate();
  }
}

void write_training_log(std::ostream& out, const std::vector<LogRow>& rows) {
  out << "stage,epoch,train_loss,val_macro_auroc,seconds\n";
  out << std::setprecision(17);
  for (const LogRow& r : rows)
    out << r.stage << ',' << r.epoch << ',' << r.train_loss << ',' << r.val_macro_auroc
        << ',' << std::setprecision(3) << std::fixed << r.seconds << std::defaultfloat
        << std::setprecision(17) << '\n';
}

namespace {

constexpr char kCkptMagic[8] = {'I', 'M', 'B', 'C', 'K', 'P', 'T', '1'};

template <typename T>
void write_pod(std::ostream& out, const T& x) {
  out.write(reinterpret_cast<const char*>(&x), sizeof x);
}

template <typename T>
void read_pod(std::istream& in, T& x) {
  in.read(reinterpret_cast<char*>(&x), sizeof x);
}

void write_str(std::ostream& out, const std::string& s) {
  write_pod(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_str(std::istream& in) {
  std::uint32_t n = 0;
  read_pod(in, n);
  std::string s(n, '\0');
  in.read(s.data(), static_cast<std::streamsize>(n));
  return s;
}

void write_params(std::ostream& out, const ParamMap& params) {
  write_pod(out, static_cast<std::uint32_t>(params.size()));
  for (const auto& [name, t] : params) {
    write_str(out, name);
    write_pod(out, static_cast<std::uint32_t>(t.shape.size()));
    for (int d : t.shape) write_pod(out, static_cast<std::int32_t>(d));
    out.write(reinterpret_cast<const char*>(t.v.data()),
              static_cast<std::streamsize>(t.v.size() * sizeof(double)));
  }
}

ParamMap read_params(std::istream& in) {
  std::uint32_t count = 0;
  read_pod(in, count);
  ParamMap params;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::string name = read_str(in);
    std::uint32_t ndims = 0;
    read_pod(in, ndims);
    std::vector<int> shape(ndims);
    for (auto& d : shape) {
      std::int32_t x = 0;
      read_pod(in, x);
      d = x;
    }
    Tensor t(shape);
    in.read(reinterpret_cast<char*>(t.v.data()),
            static_cast<std::streamsize>(t.v.size() * sizeof(double)));
    params[name] = std::move(t);
  }
  return params;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_checkpoint: cannot write " + path);
  out.write(kCkptMagic, sizeof kCkptMagic);
  write_pod(out, ckpt.version);
  write_pod(out, static_cast<std::int32_t>(ckpt.net_config.in_channels));
  write_pod(out, static_cast<std::uint32_t>(ckpt.net_config.channels.size()));
  for (int ch : ckpt.net_config.channels) write_pod(out, static_cast<std::int32_t>(ch));
  write_pod(out, static_cast<std::uint8_t>(ckpt.net_config.activation));
  write_pod(out, static_cast<std::int32_t>(ckpt.net_config.num_classes));
  write_params(out, ckpt.params);
  write_pod(out, static_cast<std::uint8_t>(ckpt.optimizer_config.kind));
  write_pod(out, ckpt.optimizer_config.lr);
  write_pod(out, ckpt.optimizer_config.beta1);
  write_pod(out, ckpt.optimizer_config.beta2);
  write_pod(out, ckpt.optimizer_config.eps);
  write_pod(out, static_cast<std::int32_t>(ckpt.optimizer_config.lookahead_k));
  write_pod(out, ckpt.optimizer_config.lookahead_alpha);
  write_pod(out, ckpt.optimizer_step);
  write_params(out, ckpt.optimizer_m);
  write_params(out, ckpt.optimizer_v);
  write_params(out, ckpt.optimizer_slow);
  write_pod(out, static_cast<std::int32_t>(ckpt.stage_index));
  write_pod(out, static_cast<std::int32_t>(ckpt.epoch));
  write_pod(out, ckpt.seed);
  if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || !std::equal(magic, magic + 8, kCkptMagic))
    throw std::runtime_error("load_checkpoint: bad magic in " + path);
  Checkpoint ckpt;
  read_pod(in, ckpt.version);
  if (ckpt.version != 1)
    throw std::runtime_error("load_checkpoint: unsupported version in " + path);
  std::int32_t in_channels = 0;
  read_pod(in, in_channels);
  ckpt.net_config.in_channels = in_channels;
  std::uint32_t nstages = 0;
  read_pod(in, nstages);
  ckpt.net_config.channels.resize(nstages);
  for (auto& ch : ckpt.net_config.channels) {
    std::int32_t x = 0;
    read_pod(in, x);
    ch = x;
  }
  std::uint8_t act = 0;
  read_pod(in, act);
  ckpt.net_config.activation = static_cast<Activation>(act);
  std::int32_t num_classes = 0;
  read_pod(in, num_classes);
  ckpt.net_config.num_classes = num_classes;
  ckpt.params = read_params(in);
  std::uint8_t kind = 0;
  read_pod(in, kind);
  ckpt.optimizer_config.kind = static_cast<OptimizerKind>(kind);
  read_pod(in, ckpt.optimizer_config.lr);
  read_pod(in, ckpt.optimizer_config.beta1);
  read_pod(in, ckpt.optimizer_config.beta2);
  read_pod(in, ckpt.optimizer_config.eps);
  std::int32_t la_k = 0;
  read_pod(in, la_k);
  ckpt.optimizer_config.lookahead_k = la_k;
  read_pod(in, ckpt.optimizer_config.lookahead_alpha);
  read_pod(in, ckpt.optimizer_step);
  ckpt.optimizer_m = read_params(in);
  ckpt.optimizer_v = read_params(in);
  ckpt.optimizer_slow = read_params(in);
  std::int32_t stage_index = 0, epoch = 0;
  read_pod(in, stage_index);
  read_pod(in, epoch);
  ckpt.stage_index = stage_index;
  ckpt.epoch = epoch;
  read_pod(in, ckpt.seed);
  if (!in) throw std::runtime_error("load_checkpoint: truncated file " + path);
  return ckpt;
}

std::vector<ScoredColumn> score_dataset(const MiniNet& net, const Dataset& data,
                                        int batch_size) {
  const std::size_t n = data.size();
  const std::size_t c = data.num_classes();
  if (static_cast<int>(c) != net.cfg.num_classes)
    throw std::invalid_argument("score_dataset: class count mismatch");

  std::vector<ScoredColumn> columns(c);
  for (std::size_t k = 0; k < c; ++k) columns[k].pattern_name = data.pattern_names[k];

  const std::size_t per_sample = data.sample_floats();
  for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(batch_size)) {
    const std::size_t b = std::min(static_cast<std::size_t>(batch_size), n - start);
    Tensor batch({static_cast<int>(b), data.channels, data.side, data.side});
    for (std::size_t i = 0; i < b; ++i) {
      const float* src = data.tensors.data() + (start + i) * per_sample;
      for (std::size_t j = 0; j < per_sample; ++j)
        batch.v[i * per_sample + j] = static_cast<double>(src[j]);
    }
    const Matrix probs = forward(net, batch);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t k = 0; k < c; ++k) {
        columns[k].scores.push_back(probs.at(i, k));
        columns[k].labels.push_back(data.labels[(start + i) * c + k]);
      }
  }
  return columns;
}

StageResult train_stage(MiniNet net, const StageSpec& stage, int stage_index,
                        const Dataset& train_data, const Dataset& val_data,
                        const WeightTable& weights, const FocalConfig& focal,
                        LossKind loss_kind, std::uint64_t seed) {
  const Dataset train = resample_dataset(train_data, stage.input_size);
  const Dataset val = resample_dataset(val_data, stage.input_size);
  const std::size_t n = train.size();
  const std::size_t c = train.num_classes();
  const std::size_t per_sample = train.sample_floats();

  Optimizer opt(stage.optimizer);
  std::mt19937_64 rng(seed);

  StageResult result;
  result.best_net = net;
  result.best_val_auroc = -1.0;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (int epoch = 1; epoch <= stage.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    std::shuffle(order.begin(), order.end(), rng);

    double loss_sum = 0.0;
    std::size_t batch_count = 0;
    for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(stage.batch_size)) {
      const std::size_t b = std::min(static_cast<std::size_t>(stage.batch_size), n - start);
      Tensor batch({static_cast<int>(b), train.channels, train.side, train.side});
      Matrix y(b, c);
      for (std::size_t i = 0; i < b; ++i) {
        const std::size_t idx = order[start + i];
        const float* src = train.tensors.data() + idx * per_sample;
        for (std::size_t j = 0; j < per_sample; ++j)
          batch.v[i * per_sample + j] = static_cast<double>(src[j]);
        for (std::size_t k = 0; k < c; ++k)
          y.at(i, k) = static_cast<double>(train.labels[idx * c + k]);
      }

      ForwardCache cache;
      const Matrix probs = forward(net, batch, &cache);
      const double loss = loss_value(probs, y, weights, focal, loss_kind);
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "train_stage: non-finite loss at stage " << stage_index << " epoch " << epoch;
        throw std::runtime_error(msg.str());
      }
      loss_sum += loss;
      ++batch_count;

      const Matrix grad = loss_gradient(probs, y, weights, focal, loss_kind);
      ParamMap pgrads = backward(net, cache, grad);
      opt.step(net.params, pgrads);
    }

    const auto columns = score_dataset(net, val);
    const EvalReport report = build_report(columns);
    const double val_auroc = report.macro_auroc;

    if (val_auroc > result.best_val_auroc) {
      result.best_val_auroc = val_auroc;
      result.best_epoch = epoch;
      result.best_net = net;
    }

    const auto t1 = std::chrono::steady_clock::now();
    LogRow row;
    row.stage = stage_index;
    row.epoch = epoch;
    row.train_loss = batch_count ? loss_sum / static_cast<double>(batch_count) : 0.0;
    row.val_macro_auroc = val_auroc;
    row.seconds = std::chrono::duration<double>(t1 - t0).count();
    result.log.push_back(row);
  }
  return result;
}

TrainResult run_stage_plan(const TrainOptions& options, const Dataset& train_data,
                           const Dataset& val_data) {
  options.plan.validate();
  options.focal.validate();

  TrainResult result;
  MiniNet current = MiniNet::init(options.net, options.seed);
  bool have_best = false;
  MiniNet best_of_previous = current;

  for (std::size_t s = 0; s < options.plan.stages.size(); ++s) {
    const StageSpec& stage = options.plan.stages[s];
    if (stage.init == StageSpec::Init::FromBestCheckpoint) {
      if (!have_best)
        throw std::runtime_error("run_stage_plan: stage " + std::to_string(s) +
                                 " wants a checkpoint but none exists yet");
      current = best_of_previous;
    } else if (s > 0) {
      current = MiniNet::init(options.net, options.seed + s);
    }

    StageResult stage_result =
        train_stage(std::move(current), stage, static_cast<int>(s), train_data, val_data,
                    options.weights, options.focal, options.loss_kind,
                    options.seed + 1000 * s);

    best_of_previous = stage_result.best_net;
    have_best = true;
    current = stage_result.best_net;
    result.log.insert(result.log.end(), stage_result.log.begin(), stage_result.log.end());
    result.stage_final_val_auroc.push_back(stage_result.log.back().val_macro_auroc);

    if (options.checkpoint_dir) {
      Checkpoint ckpt;
      ckpt.net_config = options.net;
      ckpt.params = stage_result.best_net.params;
      ckpt.optimizer_config = stage.optimizer;
      ckpt.stage_index = static_cast<int>(s);
      ckpt.epoch = stage_result.best_epoch;
      ckpt.seed = options.seed;
      const std::string path = *options.checkpoint_dir + "/stage" + std::to_string(s) + ".ckpt";
      save_checkpoint(ckpt, path);
      result.checkpoint_paths.push_back(path);
    }
  }
  result.final_net = std::move(best_of_previous);
  return result;
}

}  // namespace imbal
