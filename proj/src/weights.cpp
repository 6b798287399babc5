#include "imbal/weights.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace imbal {

void ClassCounts::validate() const {
  const std::size_t c = pattern_names.size();
  if (c < 1) throw std::invalid_argument("ClassCounts: at least one pattern required");
  if (positives.size() != c || negatives.size() != c)
    throw std::invalid_argument("ClassCounts: list lengths disagree");
  for (std::size_t k = 0; k < c; ++k) {
    if (positives[k] < 0 || negatives[k] < 0)
      throw std::invalid_argument("ClassCounts: negative count for pattern " + pattern_names[k]);
    if (positives[k] + negatives[k] != total_samples) {
      std::ostringstream msg;
      msg << "ClassCounts: pattern " << pattern_names[k] << " has "
          << positives[k] << "+" << negatives[k] << " != total " << total_samples;
      throw std::invalid_argument(msg.str());
    }
  }
}

void WeightConfig::validate() const {
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("WeightConfig: beta must be in [0,1)");
  if (!(negative_floor >= 0.0 && negative_floor <= 1.0))
    throw std::invalid_argument("WeightConfig: negative_floor must be in [0,1]");
}

double effective_alpha(double beta, long long n_k) {
  if (n_k == 0) throw std::invalid_argument("pattern has no positive samples");
  if (n_k < 0) throw std::invalid_argument("effective_alpha: n_k must be positive");
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("effective_alpha: beta must be in [0,1)");
  if (beta == 0.0) return 1.0;
  // 1 - beta^n = -expm1(n*log(beta)); log1p keeps 1-beta exact near 1.
  const double log_beta = std::log(beta);
  const double denom = -std::expm1(static_cast<double>(n_k) * log_beta);
  return (1.0 - beta) / denom;
}

double beta_from_sample_count(long long n) {
  if (n < 1) throw std::invalid_argument("beta_from_sample_count: N must be >= 1");
  return static_cast<double>(n - 1) / static_cast<double>(n);
}

std::vector<double> beta_grid_presets() {
  return {1.0 - 2.0e-6, 1.0 - 2.0e-5, 1.0 - 2.0e-4, 1.0 - 7.0e-4, 1.0 - 2.0e-3};
}

WeightTable WeightTable::uniform(std::size_t num_classes) {
  WeightTable t;
  t.beta = 0.0;
  t.pattern_names.resize(num_classes);
  t.positives.assign(num_classes, 0);
  t.negatives.assign(num_classes, 0);
  t.alpha_raw.assign(num_classes, 1.0);
  t.n_of_beta = static_cast<double>(num_classes);
  t.alpha_norm.assign(num_classes, 1.0);
  t.omega_pos.assign(num_classes, 1.0);
  t.omega_neg_raw.assign(num_classes, 1.0);
  t.omega_neg.assign(num_classes, 1.0);
  return t;
}

WeightTable build_weight_table(const ClassCounts& counts, const WeightConfig& config) {
  counts.validate();
  config.validate();
  const std::size_t c = counts.num_classes();

  WeightTable t;
  t.beta = config.beta;
  t.pattern_names = counts.pattern_names;
  t.positives = counts.positives;
  t.negatives = counts.negatives;

  switch (config.scheme) {
    case WeightScheme::Uniform: {
      WeightTable u = WeightTable::uniform(c);
      u.pattern_names = counts.pattern_names;
      u.positives = counts.positives;
      u.negatives = counts.negatives;
      u.beta = config.beta;
      return u;
    }
    case WeightScheme::Prevalence: {
      t.alpha_raw.assign(c, 1.0);
      t.n_of_beta = static_cast<double>(c);
      t.alpha_norm.assign(c, 1.0);
      t.omega_pos.resize(c);
      t.omega_neg_raw.resize(c);
      t.omega_neg.resize(c);
      for (std::size_t k = 0; k < c; ++k) {
        if (counts.positives[k] == 0)
          throw std::invalid_argument("pattern " + counts.pattern_names[k] +
                                      " has no positive samples");
        if (counts.negatives[k] == 0)
          throw std::invalid_argument("pattern " + counts.pattern_names[k] +
                                      " has no negative samples");
        const double total = static_cast<double>(counts.positives[k] + counts.negatives[k]);
        t.omega_pos[k] = total / static_cast<double>(counts.positives[k]);
        t.omega_neg_raw[k] = total / static_cast<double>(counts.negatives[k]);
        t.omega_neg[k] = t.omega_neg_raw[k];
      }
      return t;
    }
    case WeightScheme::EffectiveNumber:
      break;
  }

  t.alpha_raw.resize(c);
  for (std::size_t k = 0; k < c; ++k) {
    if (counts.positives[k] == 0)
      throw std::invalid_argument("pattern " + counts.pattern_names[k] +
                                  " has no positive samples");
    t.alpha_raw[k] = effective_alpha(config.beta, counts.positives[k]);
  }
  double sum = 0.0;
  for (double a : t.alpha_raw) sum += a;
  t.n_of_beta = sum;

  t.alpha_norm.resize(c);
  t.omega_pos.resize(c);
  t.omega_neg_raw.resize(c);
  t.omega_neg.resize(c);
  const double scale = static_cast<double>(c) / t.n_of_beta;
  for (std::size_t k = 0; k < c; ++k) {
    t.alpha_norm[k] = scale * t.alpha_raw[k];
    t.omega_pos[k] = t.alpha_norm[k];
    t.omega_neg_raw[k] = 1.0 - t.omega_pos[k];
    if (t.omega_neg_raw[k] < config.negative_floor) {
      t.omega_neg[k] = config.negative_floor;
      t.clamped.push_back(k);
    } else {
      t.omega_neg[k] = t.omega_neg_raw[k];
    }
  }
  return t;
}

void write_weight_csv(std::ostream& out, const WeightTable& table) {
  out << "pattern,positives,negatives,alpha_raw,alpha_norm,omega_pos,omega_neg_raw,omega_neg\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < table.num_classes(); ++k) {
    out << table.pattern_names[k] << ',' << table.positives[k] << ','
        << table.negatives[k] << ',' << table.alpha_raw[k] << ','
        << table.alpha_norm[k] << ',' << table.omega_pos[k] << ','
        << table.omega_neg_raw[k] << ',' << table.omega_neg[k] << '\n';
  }
}

}  // namespace imbal
