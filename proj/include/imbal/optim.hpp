#pragma once

#include <cstdint>
#include <string>

#include "imbal/nn.hpp"

namespace imbal {

enum class OptimizerKind { Adam, Ranger };

OptimizerKind optimizer_kind_from_string(const std::string& name);
std::string to_string(OptimizerKind k);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Adam;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int lookahead_k = 5;          // Ranger only
  double lookahead_alpha = 0.5;  // Ranger only

  void validate() const;
};

/// Adam or Ranger (variance-rectified Adam wrapped in Lookahead). Moment
/// tensors are created lazily on the first step and must shape-match the
/// parameters thereafter.
struct Optimizer {
  OptimizerConfig cfg;
  long long step_count = 0;
  ParamMap m;     // first moments
  ParamMap v;     // second moments
  ParamMap slow;  // Lookahead slow weights

  explicit Optimizer(OptimizerConfig c = {}) : cfg(c) { cfg.validate(); }

  void step(ParamMap& params, const ParamMap& grads);
};

}  // namespace imbal
