#include "imbal/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace imbal {

OptimizerKind optimizer_kind_from_string(const std::string& name) {
  if (name == "adam") return OptimizerKind::Adam;
  if (name == "ranger") return OptimizerKind::Ranger;
  throw std::invalid_argument("unknown optimizer: " + name);
}

std::string to_string(OptimizerKind k) {
  return k == OptimizerKind::Adam ? "adam" : "ranger";
}

void OptimizerConfig::validate() const {
  if (lr <= 0.0) throw std::invalid_argument("Optimizer: lr must be > 0");
  if (beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0)
    throw std::invalid_argument("Optimizer: betas must be in [0,1)");
  if (eps <= 0.0) throw std::invalid_argument("Optimizer: eps must be > 0");
  if (lookahead_k < 1) throw std::invalid_argument("Optimizer: lookahead sync period must be >= 1");
  if (lookahead_alpha < 0.0 || lookahead_alpha > 1.0)
    throw std::invalid_argument("Optimizer: lookahead alpha must be in [0,1]");
}

void Optimizer::step(ParamMap& params, const ParamMap& grads) {
  if (m.empty()) {
    for (const auto& [name, t] : params) {
      m[name] = Tensor(t.shape);
      v[name] = Tensor(t.shape);
    }
    if (cfg.kind == OptimizerKind::Ranger) slow = params;
  }
  ++step_count;
  const double t = static_cast<double>(step_count);
  const double bc1 = 1.0 - std::pow(cfg.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg.beta2, t);

  // RAdam rectification term; undefined (SGD-with-momentum fallback) while
  // rho_t <= 4 at small step counts.
  double rect = 1.0;
  bool rectified = true;
  if (cfg.kind == OptimizerKind::Ranger) {
    const double rho_inf = 2.0 / (1.0 - cfg.beta2) - 1.0;
    const double rho_t = rho_inf - 2.0 * t * std::pow(cfg.beta2, t) / bc2;
    if (rho_t > 4.0) {
      rect = std::sqrt(((rho_t - 4.0) * (rho_t - 2.0) * rho_inf) /
                       ((rho_inf - 4.0) * (rho_inf - 2.0) * rho_t));
    } else {
      rectified = false;
    }
  }

  for (auto& [name, p] : params) {
    auto git = grads.find(name);
    if (git == grads.end())
      throw std::invalid_argument("Optimizer: missing gradient for " + name);
    const Tensor& g = git->second;
    Tensor& mt = m.at(name);
    Tensor& vt = v.at(name);
    if (g.size() != p.size() || mt.size() != p.size())
      throw std::invalid_argument("Optimizer: shape mismatch for " + name);

    for (std::size_t i = 0; i < p.v.size(); ++i) {
      mt.v[i] = cfg.beta1 * mt.v[i] + (1.0 - cfg.beta1) * g.v[i];
      vt.v[i] = cfg.beta2 * vt.v[i] + (1.0 - cfg.beta2) * g.v[i] * g.v[i];
      const double m_hat = mt.v[i] / bc1;
      if (cfg.kind == OptimizerKind::Adam) {
        const double v_hat = vt.v[i] / bc2;
        p.v[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
      } else if (rectified) {
        const double v_hat = vt.v[i] / bc2;
        p.v[i] -= cfg.lr * rect * m_hat / (std::sqrt(v_hat) + cfg.eps);
      } else {
        p.v[i] -= cfg.lr * m_hat;
      }
    }
  }

  if (cfg.kind == OptimizerKind::Ranger && step_count % cfg.lookahead_k == 0) {
    for (auto& [name, p] : params) {
      Tensor& s = slow.at(name);
      for (std::size_t i = 0; i < p.v.size(); ++i) {
        s.v[i] += cfg.lookahead_alpha * (p.v[i] - s.v[i]);
        p.v[i] = s.v[i];
      }
    }
  }
}

}  // namespace imbal
