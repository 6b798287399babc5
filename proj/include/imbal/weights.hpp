#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace imbal {

/// Per-pattern positive/negative counts for a multilabel split.
/// Every sample is either positive or negative for each pattern, so
/// positives[k] + negatives[k] == total_samples for all k.
struct ClassCounts {
  std::vector<std::string> pattern_names;
  std::vector<long long> positives;
  std::vector<long long> negatives;
  long long total_samples = 0;

  std::size_t num_classes() const { return pattern_names.size(); }
  void validate() const;  // throws std::invalid_argument on violation
};

enum class WeightScheme { EffectiveNumber, Prevalence, Uniform };

struct WeightConfig {
  double beta = 0.9998;
  WeightScheme scheme = WeightScheme::EffectiveNumber;
  double negative_floor = 0.0;  // lower clamp for the negative weights

  void validate() const;
};

/// Per-pattern loss weights plus the intermediates that produced them.
struct WeightTable {
  double beta = 0.0;
  std::vector<std::string> pattern_names;
  std::vector<long long> positives;
  std::vector<long long> negatives;
  std::vector<double> alpha_raw;       // (1-beta)/(1-beta^n_k)
  double n_of_beta = 0.0;              // sum of alpha_raw
  std::vector<double> alpha_norm;      // (C / n_of_beta) * alpha_raw
  std::vector<double> omega_pos;       // positive-sample multipliers
  std::vector<double> omega_neg_raw;   // 1 - omega_pos, before clamping
  std::vector<double> omega_neg;       // after the floor clamp
  std::vector<std::size_t> clamped;    // indices where the clamp fired

  std::size_t num_classes() const { return omega_pos.size(); }

  /// All-ones table for C classes (the unweighted baseline).
  static WeightTable uniform(std::size_t num_classes);
};

/// alpha_k(beta) = (1-beta)/(1-beta^n_k), evaluated through expm1/log so
/// that beta arbitrarily close to 1 stays well conditioned.
double effective_alpha(double beta, long long n_k);

/// beta = (N-1)/N for a split of N samples.
double beta_from_sample_count(long long n);

/// The five preset beta values, largest first.
std::vector<double> beta_grid_presets();

WeightTable build_weight_table(const ClassCounts& counts, const WeightConfig& config);

/// CSV with header pattern,positives,negatives,alpha_raw,alpha_norm,
/// omega_pos,omega_neg_raw,omega_neg; rows in input order.
void write_weight_csv(std::ostream& out, const WeightTable& table);

}  // namespace imbal
