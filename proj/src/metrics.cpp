#include "imbal/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace imbal {

long long ScoredColumn::count_positives() const {
  return std::count(labels.begin(), labels.end(), 1);
}

long long ScoredColumn::count_negatives() const {
  return static_cast<long long>(labels.size()) - count_positives();
}

namespace {

struct Group {
  double score;
  long long tp = 0;  // positives at this score
  long long fp = 0;  // negatives at this score
};

// Descending-score threshold groups; equal scores collapse into one group.
std::vector<Group> score_groups(const ScoredColumn& col) {
  if (col.scores.size() != col.labels.size())
    throw std::invalid_argument("ScoredColumn: scores/labels length mismatch");
  std::vector<std::size_t> order(col.scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return col.scores[a] > col.scores[b];
  });
  std::vector<Group> groups;
  for (std::size_t i : order) {
    if (groups.empty() || groups.back().score != col.scores[i])
      groups.push_back({col.scores[i], 0, 0});
    if (col.labels[i] == 1)
      ++groups.back().tp;
    else
      ++groups.back().fp;
  }
  return groups;
}

}  // namespace

double auroc(const ScoredColumn& col) {
  const long long p = col.count_positives();
  const long long n = col.count_negatives();
  if (p == 0 || n == 0)
    throw std::invalid_argument("AUROC undefined: column '" + col.pattern_name +
                                "' has a single class");
  const auto groups = score_groups(col);
  double area = 0.0;
  long long cum_tp = 0, cum_fp = 0;
  for (const Group& g : groups) {
    const double tpr0 = static_cast<double>(cum_tp) / p;
    const double fpr0 = static_cast<double>(cum_fp) / n;
    cum_tp += g.tp;
    cum_fp += g.fp;
    const double tpr1 = static_cast<double>(cum_tp) / p;
    const double fpr1 = static_cast<double>(cum_fp) / n;
    area += (fpr1 - fpr0) * 0.5 * (tpr0 + tpr1);
  }
  return area;
}

double auprc(const ScoredColumn& col) {
  const long long p = col.count_positives();
  if (p == 0)
    throw std::invalid_argument("AU-PRC undefined: column '" + col.pattern_name +
                                "' has no positives");
  const auto groups = score_groups(col);
  double ap = 0.0;
  long long cum_tp = 0, cum_fp = 0;
  for (const Group& g : groups) {
    cum_tp += g.tp;
    cum_fp += g.fp;
    if (g.tp > 0) {
      const double precision = static_cast<double>(cum_tp) /
                               static_cast<double>(cum_tp + cum_fp);
      ap += static_cast<double>(g.tp) * precision;
    }
  }
  return ap / static_cast<double>(p);
}

double baseline_auprc(long long positives, long long negatives) {
  if (positives < 0 || negatives < 0)
    throw std::invalid_argument("baseline_auprc: counts must be non-negative");
  if (positives + negatives < 1)
    throw std::invalid_argument("baseline_auprc: empty column");
  return static_cast<double>(positives) / static_cast<double>(positives + negatives);
}

EvalReport build_report(const std::vector<ScoredColumn>& columns,
                        std::vector<std::string>* warnings) {
  if (columns.empty()) throw std::invalid_argument("build_report: empty column list");
  EvalReport report;
  double sum_auroc = 0.0, sum_auprc = 0.0, sum_baseline = 0.0;
  for (const ScoredColumn& col : columns) {
    PatternMetrics m;
    m.pattern = col.pattern_name;
    m.positives = col.count_positives();
    m.negatives = col.count_negatives();
    m.baseline_auprc = baseline_auprc(m.positives, m.negatives);
    if (m.positives > 0 && m.negatives > 0) {
      m.auroc = auroc(col);
      m.auprc = auprc(col);
      m.defined = true;
      sum_auroc += m.auroc;
      sum_auprc += m.auprc;
      sum_baseline += m.baseline_auprc;
      ++report.defined_count;
    } else if (warnings) {
      warnings->push_back("pattern " + col.pattern_name +
                          " has a single class; excluded from macro averages");
    }
    report.rows.push_back(std::move(m));
  }
  if (report.defined_count > 0) {
    const double d = static_cast<double>(report.defined_count);
    report.macro_auroc = sum_auroc / d;
    report.macro_auprc = sum_auprc / d;
    report.macro_baseline = sum_baseline / d;
  }
  return report;
}

std::vector<RocPoint> roc_points(const ScoredColumn& col) {
  const long long p = col.count_positives();
  const long long n = col.count_negatives();
  if (p == 0 || n == 0)
    throw std::invalid_argument("ROC undefined for single-class column");
  const auto groups = score_groups(col);
  std::vector<RocPoint> pts;
  pts.push_back({0.0, 0.0});
  long long cum_tp = 0, cum_fp = 0;
  for (const Group& g : groups) {
    cum_tp += g.tp;
    cum_fp += g.fp;
    pts.push_back({static_cast<double>(cum_fp) / n, static_cast<double>(cum_tp) / p});
  }
  return pts;
}

std::vector<PrPoint> pr_points(const ScoredColumn& col) {
  const long long p = col.count_positives();
  if (p == 0) throw std::invalid_argument("PR undefined without positives");
  const auto groups = score_groups(col);
  std::vector<PrPoint> pts;
  long long cum_tp = 0, cum_fp = 0;
  for (const Group& g : groups) {
    cum_tp += g.tp;
    cum_fp += g.fp;
    pts.push_back({g.score,
                   static_cast<double>(cum_tp) / static_cast<double>(cum_tp + cum_fp),
                   static_cast<double>(cum_tp) / static_cast<double>(p)});
  }
  return pts;
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "pattern,positives,negatives,baseline_auprc,auprc,auroc\n";
  out << std::setprecision(17);
  for (const PatternMetrics& m : report.rows) {
    out << m.pattern << ',' << m.positives << ',' << m.negatives << ','
        << m.baseline_auprc << ',';
    if (m.defined)
      out << m.auprc << ',' << m.auroc << '\n';
    else
      out << "NA,NA\n";
  }
  out << "AVERAGE,,," << report.macro_baseline << ',' << report.macro_auprc << ','
      << report.macro_auroc << '\n';
}

void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& points) {
  out << "fpr,tpr\n" << std::setprecision(17);
  for (const RocPoint& pt : points) out << pt.fpr << ',' << pt.tpr << '\n';
}

void write_pr_csv(std::ostream& out, const std::vector<PrPoint>& points) {
  out << "threshold,precision,recall\n" << std::setprecision(17);
  for (const PrPoint& pt : points) out << pt.threshold << ',' << pt.precision << ',' << pt.recall << '\n';
}

}  // namespace imbal
