#include "imbal/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imbal {

void FocalConfig::validate() const {
  if (gamma < 0.0) throw std::invalid_argument("FocalConfig: gamma must be >= 0");
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("FocalConfig: alpha must be in [0,1]");
  if (!(prob_epsilon > 0.0 && prob_epsilon < 0.5))
    throw std::invalid_argument("FocalConfig: prob_epsilon must be in (0, 0.5)");
}

double stable_sigmoid(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

ActivationValues activations(double x) {
  ActivationValues a;
  a.relu = std::max(0.0, x);
  a.relu6 = std::min(a.relu, 6.0);
  a.sigmoid = stable_sigmoid(x);
  a.swish = x * a.sigmoid;
  return a;
}

namespace {

inline double clamp_p(double p, double eps) {
  return std::min(std::max(p, eps), 1.0 - eps);
}

void check_inputs(const Matrix& p, const Matrix& y, const WeightTable& w) {
  require_same_shape(p, y, "loss");
  if (p.rows < 1) throw std::invalid_argument("loss: empty batch");
  if (w.num_classes() != p.cols)
    throw std::invalid_argument("loss: weight table size does not match label columns");
}

}  // namespace

double focal_term(double p, const FocalConfig& config) {
  config.validate();
  const double pc = clamp_p(p, config.prob_epsilon);
  return -config.alpha * std::pow(1.0 - pc, config.gamma) * std::log(pc);
}

double weighted_bce(const Matrix& p, const Matrix& y, const WeightTable& w) {
  check_inputs(p, y, w);
  const double eps = 1e-7;
  double total = 0.0;
  for (std::size_t i = 0; i < p.rows; ++i) {
    for (std::size_t k = 0; k < p.cols; ++k) {
      const double pc = clamp_p(p.at(i, k), eps);
      if (y.at(i, k) != 0.0) {
        total += w.omega_pos[k] * (-std::log(pc));
      } else {
        total += w.omega_neg[k] * (-std::log(1.0 - pc));
      }
    }
  }
  return total / static_cast<double>(p.rows);
}

double weighted_focal(const Matrix& p, const Matrix& y, const WeightTable& w,
                      const FocalConfig& config) {
  check_inputs(p, y, w);
  config.validate();
  const double eps = config.prob_epsilon;
  const double a = config.alpha;
  const double g = config.gamma;
  double total = 0.0;
  for (std::size_t i = 0; i < p.rows; ++i) {
    for (std::size_t k = 0; k < p.cols; ++k) {
      const double pc = clamp_p(p.at(i, k), eps);
      if (y.at(i, k) != 0.0) {
        total += w.omega_pos[k] * (-a * std::pow(1.0 - pc, g) * std::log(pc));
      } else {
        total += w.omega_neg[k] * (-a * std::pow(pc, g) * std::log(1.0 - pc));
      }
    }
  }
  return total / static_cast<double>(p.rows);
}

double loss_value(const Matrix& p, const Matrix& y, const WeightTable& w,
                  const FocalConfig& config, LossKind kind) {
  if (kind == LossKind::BCE) return weighted_bce(p, y, w);
  return weighted_focal(p, y, w, config);
}

Matrix loss_gradient(const Matrix& p, const Matrix& y, const WeightTable& w,
                     const FocalConfig& config, LossKind kind) {
  check_inputs(p, y, w);
  config.validate();
  const double eps = (kind == LossKind::BCE) ? 1e-7 : config.prob_epsilon;
  const double a = config.alpha;
  const double g = config.gamma;
  const double inv_b = 1.0 / static_cast<double>(p.rows);

  Matrix grad(p.rows, p.cols);
  for (std::size_t i = 0; i < p.rows; ++i) {
    for (std::size_t k = 0; k < p.cols; ++k) {
      const double pc = clamp_p(p.at(i, k), eps);
      const bool pos = y.at(i, k) != 0.0;
      double d;
      if (kind == LossKind::BCE) {
        d = pos ? w.omega_pos[k] * (-1.0 / pc)
                : w.omega_neg[k] * (1.0 / (1.0 - pc));
      } else if (pos) {
        // d/dp [-a(1-p)^g log p] = a*g*(1-p)^(g-1)*log p - a*(1-p)^g/p
        double d_pos = -a * std::pow(1.0 - pc, g) / pc;
        if (g > 0.0) d_pos += a * g * std::pow(1.0 - pc, g - 1.0) * std::log(pc);
        d = w.omega_pos[k] * d_pos;
      } else {
        // d/dp [-a p^g log(1-p)] = -a*g*p^(g-1)*log(1-p) + a*p^g/(1-p)
        double d_neg = a * std::pow(pc, g) / (1.0 - pc);
        if (g > 0.0) d_neg += -a * g * std::pow(pc, g - 1.0) * std::log(1.0 - pc);
        d = w.omega_neg[k] * d_neg;
      }
      grad.at(i, k) = inv_b * d;
    }
  }
  return grad;
}

}  // namespace imbal
