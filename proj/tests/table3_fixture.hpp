#pragma once

// Chest X-ray 14 reference counts used as a shared test fixture: 112120
// samples of which 60361 are healthy (negative for every pattern).

#include <vector>

#include "imbal/data.hpp"
#include "imbal/weights.hpp"

namespace testfix {

inline const std::vector<long long>& table3_positives() {
  static const std::vector<long long> p = {227,  1431, 1686,  2303,  2516,  2776, 3385,
                                           4667, 5302, 5782,  6331,  11559, 13317, 19894};
  return p;
}

constexpr long long kTable3Total = 112120;
constexpr long long kTable3Healthy = 60361;

inline imbal::ClassCounts table3_counts() {
  imbal::ClassCounts counts;
  counts.pattern_names = imbal::chest_xray14_patterns();
  counts.positives = table3_positives();
  counts.total_samples = kTable3Total;
  for (long long p : counts.positives) counts.negatives.push_back(kTable3Total - p);
  return counts;
}

// A record set whose per-pattern counts reproduce the reference exactly:
// healthy records plus sick records that receive pattern labels round-robin.
inline std::vector<imbal::LabelRecord> table3_replica_records() {
  const auto& names = imbal::chest_xray14_patterns();
  const auto& positives = table3_positives();
  const long long sick = kTable3Total - kTable3Healthy;

  std::vector<imbal::LabelRecord> records(static_cast<std::size_t>(kTable3Total));
  for (long long i = 0; i < kTable3Total; ++i)
    records[static_cast<std::size_t>(i)].image_id =
        "r" + std::to_string(100000000 + i) + "_000.png";

  long long offset = 0;
  for (std::size_t k = 0; k < names.size(); ++k) {
    for (long long j = 0; j < positives[k]; ++j) {
      const long long idx = (offset + j) % sick;
      records[static_cast<std::size_t>(idx)].findings.push_back(names[k]);
    }
    offset = (offset + positives[k]) % sick;
  }
  return records;
}

}  // namespace testfix
