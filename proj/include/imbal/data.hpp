#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "imbal/nn.hpp"
#include "imbal/weights.hpp"

namespace imbal {

struct LabelRecord {
  std::string image_id;
  std::vector<std::string> findings;  // sorted, unique; empty means healthy
};

/// The canonical 14-pattern vocabulary, in ascending-prevalence order.
const std::vector<std::string>& chest_xray14_patterns();

/// Maps alternate spellings ("Pleural Thickening", "Pleural_Thickening")
/// onto the configured names. Unmapped names pass through unchanged.
std::string normalize_pattern_name(const std::string& name);

/// Parses Data_Entry-style CSV with columns `Image Index` and
/// `Finding Labels` (pipe-delimited; `No Finding` is the empty set).
/// Findings outside the vocabulary raise an error naming them.
std::vector<LabelRecord> parse_labels(std::istream& in,
                                      const std::vector<std::string>& vocabulary);

void write_labels_csv(std::ostream& out, const std::vector<LabelRecord>& records);

/// Positive/negative counts over the records in `membership` (all records
/// when membership is null).
ClassCounts class_counts(const std::vector<LabelRecord>& records,
                         const std::vector<std::string>& vocabulary,
                         const std::set<std::string>* membership = nullptr);

enum class SplitKind { OfficialStyle, KFold, Ratio };

struct SplitSpec {
  SplitKind kind = SplitKind::Ratio;
  // OfficialStyle
  std::vector<std::string> train_val_ids;
  std::vector<std::string> test_ids;
  double val_fraction = 0.1;  // carve-out from the train_val list
  // KFold
  int k = 5;
  int fold = 0;
  // Ratio
  double train_ratio = 0.7;
  double val_ratio = 0.15;
  double test_ratio = 0.15;

  std::uint64_t seed = 0;
  bool patient_grouped = false;  // keep same patient-id prefix on one side

  void validate() const;
};

struct SplitResult {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
};

SplitResult make_split(const std::vector<LabelRecord>& records, const SplitSpec& spec);

/// `image_id,subset` rows, subset one of train/val/test.
void write_split_manifest(std::ostream& out, const SplitResult& split);
SplitResult read_split_manifest(std::istream& in);

struct SynthPattern {
  std::string name;
  double prevalence = 0.1;
  double blob_sigma = 1.5;
  double blob_amplitude = 3.0;
};

struct SynthSpec {
  std::vector<SynthPattern> patterns;
  int side = 28;
  int channels = 1;
  int count = 1000;
  std::uint64_t seed = 0;
  bool correlated = false;  // when set, co-draws labels with a shared factor

  void validate() const;
};

/// In-memory multilabel image dataset; tensors are n * channels * side^2.
struct Dataset {
  int side = 0;
  int channels = 1;
  std::vector<std::string> pattern_names;
  std::vector<std::string> ids;
  std::vector<float> tensors;
  std::vector<std::uint8_t> labels;  // n * C

  std::size_t size() const { return ids.size(); }
  std::size_t num_classes() const { return pattern_names.size(); }
  std::size_t sample_floats() const {
    return static_cast<std::size_t>(channels) * side * side;
  }
  /// One sample as a 1 x channels x side x side double tensor.
  Tensor sample_tensor(std::size_t index) const;
  /// Subset by id; unknown ids raise.
  Dataset subset(const std::vector<std::string>& keep_ids) const;
  std::vector<LabelRecord> records() const;
};

/// Quadrant (0..3: TL, TR, BL, BR) in which pattern k's signal blob lives.
int pattern_quadrant(std::size_t pattern_index);

/// Background noise plus one localized blob per positive label, placed in
/// the pattern's quadrant. Seed-deterministic. Infeasible prevalences
/// (expected positives < 1) append a warning instead of failing.
Dataset generate_synthetic(const SynthSpec& spec,
                           std::vector<std::string>* warnings = nullptr);

/// Writes <stem>.tensors.bin (versioned binary) and <stem>.labels.csv.
void save_dataset(const Dataset& data, const std::string& stem);
Dataset load_dataset(const std::string& stem);

/// Box-average downsample (target divides side) or nearest-neighbor
/// upsample (side divides target) of every image.
Dataset resample_dataset(const Dataset& data, int target_side);

}  // namespace imbal
