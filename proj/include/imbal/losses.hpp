#pragma once

#include "imbal/matrix.hpp"
#include "imbal/weights.hpp"

namespace imbal {

struct FocalConfig {
  double alpha = 0.5;
  double gamma = 1.0;
  double prob_epsilon = 1e-7;  // predictions are clamped into [eps, 1-eps]

  void validate() const;
};

enum class LossKind { BCE, Focal };

/// -alpha * (1-p)^gamma * log(p) for a single positive-label prediction,
/// p clamped first. gamma=0, alpha=1 reduces to -log(p).
double focal_term(double p, const FocalConfig& config);

/// Batch-mean, class-sum weighted binary cross entropy. The positive term
/// -y*log(p) carries omega_pos[k], the negative term -(1-y)*log(1-p)
/// carries omega_neg[k].
double weighted_bce(const Matrix& p, const Matrix& y, const WeightTable& w);

/// Weighted focal loss; the negative term gets the mirrored focal factor
/// p^gamma. gamma=0, alpha=1 recovers weighted_bce exactly.
double weighted_focal(const Matrix& p, const Matrix& y, const WeightTable& w,
                      const FocalConfig& config);

double loss_value(const Matrix& p, const Matrix& y, const WeightTable& w,
                  const FocalConfig& config, LossKind kind);

/// Analytic dL/dp of the batch-mean loss, entry per clamped prediction.
Matrix loss_gradient(const Matrix& p, const Matrix& y, const WeightTable& w,
                     const FocalConfig& config, LossKind kind);

struct ActivationValues {
  double relu;
  double relu6;
  double swish;
  double sigmoid;
};

ActivationValues activations(double x);

/// 1/(1+e^-x) without overflow for large |x|.
double stable_sigmoid(double x);

}  // namespace imbal
