#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace imbal {

/// One pattern's prediction scores paired with binary ground truth.
struct ScoredColumn {
  std::vector<double> scores;
  std::vector<int> labels;  // 0 or 1
  std::string pattern_name;

  long long count_positives() const;
  long long count_negatives() const;
};

struct PatternMetrics {
  std::string pattern;
  long long positives = 0;
  long long negatives = 0;
  double baseline_auprc = 0.0;
  double auprc = 0.0;
  double auroc = 0.0;
  bool defined = false;  // false when the column is single-class
};

struct EvalReport {
  std::vector<PatternMetrics> rows;
  double macro_auroc = 0.0;
  double macro_auprc = 0.0;
  double macro_baseline = 0.0;
  std::size_t defined_count = 0;
};

/// Trapezoidal area under the ROC curve with equal scores processed as one
/// threshold group (equivalent to pair counting with ties credited 0.5).
double auroc(const ScoredColumn& col);

/// Average precision with threshold-group tie handling.
double auprc(const ScoredColumn& col);

/// positives / (positives + negatives): the random-classifier AU-PRC.
double baseline_auprc(long long positives, long long negatives);

/// Per-pattern metrics plus macro averages over the defined patterns.
/// Patterns whose metrics are undefined are excluded from the macro mean;
/// a warning line per excluded pattern is appended to `warnings` if given.
EvalReport build_report(const std::vector<ScoredColumn>& columns,
                        std::vector<std::string>* warnings = nullptr);

struct RocPoint {
  double fpr;
  double tpr;
};
struct PrPoint {
  double threshold;
  double precision;
  double recall;
};

std::vector<RocPoint> roc_points(const ScoredColumn& col);
std::vector<PrPoint> pr_points(const ScoredColumn& col);

/// pattern,positives,negatives,baseline_auprc,auprc,auroc rows plus a final
/// AVERAGE row; undefined metrics render as "NA".
void write_report_csv(std::ostream& out, const EvalReport& report);
void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& points);
void write_pr_csv(std::ostream& out, const std::vector<PrPoint>& points);

}  // namespace imbal
