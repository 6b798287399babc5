#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "imbal/data.hpp"
#include "table3_fixture.hpp"

using namespace imbal;

TEST_CASE("parse_labels basics") {
  std::istringstream in(
      "Image Index,Finding Labels,Follow-up #\n"
      "x.png,Hernia|Pneumonia,0\n"
      "y.png,No Finding,1\n"
      "z.png,Pleural Thickening,2\n");
  const auto records = parse_labels(in, chest_xray14_patterns());
  REQUIRE(records.size() == 3);
  CHECK(records[0].findings == std::vector<std::string>{"Hernia", "Pneumonia"});
  CHECK(records[1].findings.empty());
  // alternate spelling is normalized onto the configured name
  CHECK(records[2].findings == std::vector<std::string>{"Pleural_Thickening"});
}

TEST_CASE("parse_labels accepts the full vocabulary verbatim") {
  std::ostringstream src;
  src << "Image Index,Finding Labels\n";
  for (const auto& name : chest_xray14_patterns()) src << name << ".png," << name << "\n";
  std::istringstream in(src.str());
  const auto records = parse_labels(in, chest_xray14_patterns());
  CHECK(records.size() == 14);
}

TEST_CASE("parse_labels rejects unknown findings and bad headers") {
  std::istringstream unknown(
      "Image Index,Finding Labels\n"
      "x.png,Hernia|Gremlin\n");
  CHECK_THROWS_WITH_AS(parse_labels(unknown, chest_xray14_patterns()),
                       "parse_labels: unknown findings at row 2: Gremlin",
                       std::invalid_argument);
  std::istringstream no_col("Image Index,Other\nx.png,foo\n");
  CHECK_THROWS_AS(parse_labels(no_col, chest_xray14_patterns()), std::invalid_argument);
}

TEST_CASE("label round-trip through the writer is identity") {
  std::istringstream in(
      "Image Index,Finding Labels\n"
      "a.png,Edema|Mass\n"
      "b.png,No Finding\n");
  const auto records = parse_labels(in, chest_xray14_patterns());
  std::ostringstream out;
  write_labels_csv(out, records);
  std::istringstream back(out.str());
  const auto reparsed = parse_labels(back, chest_xray14_patterns());
  REQUIRE(reparsed.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(reparsed[i].image_id == records[i].image_id);
    CHECK(reparsed[i].findings == records[i].findings);
  }
}

TEST_CASE("class_counts invariants and edge cases") {
  std::vector<LabelRecord> records;
  LabelRecord all;
  all.image_id = "all.png";
  all.findings = chest_xray14_patterns();
  std::sort(all.findings.begin(), all.findings.end());
  records.push_back(all);
  const ClassCounts counts = class_counts(records, chest_xray14_patterns());
  for (std::size_t k = 0; k < counts.num_classes(); ++k) {
    CHECK(counts.positives[k] == 1);
    CHECK(counts.negatives[k] == 0);
  }
  counts.validate();

  CHECK_THROWS_AS(class_counts({}, chest_xray14_patterns()), std::invalid_argument);
}

TEST_CASE("replica fixture reproduces the reference counts exactly") {
  const auto records = testfix::table3_replica_records();
  const ClassCounts counts = class_counts(records, chest_xray14_patterns());
  const ClassCounts want = testfix::table3_counts();
  CHECK(counts.total_samples == want.total_samples);
  long long healthy = 0;
  for (const auto& rec : records)
    if (rec.findings.empty()) ++healthy;
  CHECK(healthy == testfix::kTable3Healthy);
  for (std::size_t k = 0; k < want.num_classes(); ++k) {
    CHECK(counts.positives[k] == want.positives[k]);
    CHECK(counts.negatives[k] == want.negatives[k]);
  }
}

namespace {

std::vector<LabelRecord> simple_records(int n) {
  std::vector<LabelRecord> records;
  for (int i = 0; i < n; ++i) {
    LabelRecord rec;
    rec.image_id = "s" + std::to_string(i);
    records.push_back(rec);
  }
  return records;
}

}  // namespace

TEST_CASE("kfold splits partition the ids") {
  const auto records = simple_records(100);
  std::set<std::string> seen;
  for (int fold = 0; fold < 5; ++fold) {
    SplitSpec spec;
    spec.kind = SplitKind::KFold;
    spec.k = 5;
    spec.fold = fold;
    spec.seed = 3;
    const SplitResult split = make_split(records, spec);
    CHECK(split.test.size() == 20);
    for (const auto& id : split.test) {
      CHECK(!seen.count(id));
      seen.insert(id);
    }
    // train/val/test together cover everything exactly once
    std::set<std::string> all(split.train.begin(), split.train.end());
    all.insert(split.val.begin(), split.val.end());
    all.insert(split.test.begin(), split.test.end());
    CHECK(all.size() == 100);
    CHECK(split.train.size() + split.val.size() + split.test.size() == 100);
  }
  CHECK(seen.size() == 100);
}

TEST_CASE("splits are deterministic per seed") {
  const auto records = simple_records(50);
  SplitSpec spec;
  spec.kind = SplitKind::KFold;
  spec.k = 5;
  spec.fold = 2;
  spec.seed = 11;
  const SplitResult a = make_split(records, spec);
  const SplitResult b = make_split(records, spec);
  CHECK(a.train == b.train);
  CHECK(a.val == b.val);
  CHECK(a.test == b.test);
  spec.seed = 12;
  const SplitResult c = make_split(records, spec);
  CHECK(a.test != c.test);
}

TEST_CASE("patient grouping keeps a patient on one side") {
  std::vector<LabelRecord> records;
  for (const char* id : {"p01_a", "p01_b", "p02_a", "p03_a", "p03_b", "p04_a"}) {
    LabelRecord rec;
    rec.image_id = id;
    records.push_back(rec);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SplitSpec spec;
    spec.kind = SplitKind::Ratio;
    spec.train_ratio = 0.5;
    spec.val_ratio = 0.25;
    spec.test_ratio = 0.25;
    spec.seed = seed;
    spec.patient_grouped = true;
    const SplitResult split = make_split(records, spec);
    const auto side_of = [&](const std::string& id) {
      if (std::count(split.train.begin(), split.train.end(), id)) return 0;
      if (std::count(split.val.begin(), split.val.end(), id)) return 1;
      return 2;
    };
    CHECK(side_of("p01_a") == side_of("p01_b"));
    CHECK(side_of("p03_a") == side_of("p03_b"));
  }
}

TEST_CASE("official-style split validates the list files") {
  const auto records = simple_records(10);
  SplitSpec spec;
  spec.kind = SplitKind::OfficialStyle;
  spec.train_val_ids = {"s0", "s1", "s2", "s3", "s4", "s5", "s6"};
  spec.test_ids = {"s7", "s8", "s9"};
  spec.seed = 1;
  const SplitResult split = make_split(records, spec);
  CHECK(split.test == spec.test_ids);
  CHECK(split.train.size() + split.val.size() == 7);
  CHECK(!split.val.empty());

  SplitSpec overlap = spec;
  overlap.test_ids = {"s0"};
  CHECK_THROWS_AS(make_split(records, overlap), std::invalid_argument);
  SplitSpec missing = spec;
  missing.test_ids = {"nope"};
  CHECK_THROWS_AS(make_split(records, missing), std::invalid_argument);
}

TEST_CASE("split manifest round trip") {
  SplitResult split;
  split.train = {"a", "b"};
  split.val = {"c"};
  split.test = {"d", "e"};
  std::ostringstream out;
  write_split_manifest(out, split);
  std::istringstream in(out.str());
  const SplitResult back = read_split_manifest(in);
  CHECK(back.train == split.train);
  CHECK(back.val == split.val);
  CHECK(back.test == split.test);
}

namespace {

SynthSpec small_spec(std::uint64_t seed) {
  SynthSpec spec;
  spec.patterns = {{"alpha", 0.5, 1.5, 3.0}, {"beta", 0.1, 1.5, 3.0}};
  spec.side = 16;
  spec.count = 400;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("synthetic generation is seed-deterministic") {
  const Dataset a = generate_synthetic(small_spec(42));
  const Dataset b = generate_synthetic(small_spec(42));
  CHECK(a.tensors == b.tensors);
  CHECK(a.labels == b.labels);
  const Dataset c = generate_synthetic(small_spec(43));
  CHECK(a.tensors != c.tensors);
}

TEST_CASE("synthetic prevalences match their targets over 20 seeds") {
  for (double target : {0.5, 0.1}) {
    long long positives = 0;
    long long total = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SynthSpec spec = small_spec(seed);
      spec.patterns[0].prevalence = target;
      spec.count = 500;
      const Dataset data = generate_synthetic(spec);
      for (std::size_t i = 0; i < data.size(); ++i) positives += data.labels[i * 2];
      total += spec.count;
    }
    const double se = std::sqrt(target * (1 - target) * static_cast<double>(total));
    CHECK(std::abs(static_cast<double>(positives) - target * total) <= 3.0 * se + 1.0);
  }
}

TEST_CASE("infeasible prevalence warns instead of failing") {
  SynthSpec spec = small_spec(1);
  spec.patterns[1].prevalence = 0.0001;  // expected positives well below 1
  std::vector<std::string> warnings;
  const Dataset data = generate_synthetic(spec, &warnings);
  CHECK(data.size() == 400);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("beta") != std::string::npos);
}

TEST_CASE("positive samples put energy into the pattern quadrant") {
  SynthSpec spec = small_spec(7);
  spec.patterns[0].prevalence = 0.5;
  const Dataset data = generate_synthetic(spec);
  const int half = spec.side / 2;
  int checked = 0;
  for (std::size_t i = 0; i < data.size() && checked < 50; ++i) {
    if (!data.labels[i * 2] || data.labels[i * 2 + 1]) continue;  // only pattern 0
    ++checked;
    // quadrant 0 is top-left; its mean should beat the bottom-right
    double q0 = 0.0, q3 = 0.0;
    const float* img = data.tensors.data() + i * data.sample_floats();
    for (int y = 0; y < half; ++y)
      for (int x = 0; x < half; ++x) {
        q0 += img[y * spec.side + x];
        q3 += img[(y + half) * spec.side + (x + half)];
      }
    CHECK(q0 > q3);
  }
  CHECK(checked > 10);
}

TEST_CASE("dataset save/load round trip and subset") {
  namespace fs = std::filesystem;
  const Dataset data = generate_synthetic(small_spec(3));
  const std::string stem = (fs::temp_directory_path() / "imbal_test_ds").string();
  save_dataset(data, stem);
  const Dataset back = load_dataset(stem);
  CHECK(back.tensors == data.tensors);
  CHECK(back.labels == data.labels);
  CHECK(back.ids == data.ids);
  CHECK(back.pattern_names == data.pattern_names);

  const Dataset sub = data.subset({data.ids[5], data.ids[0]});
  CHECK(sub.size() == 2);
  CHECK(sub.ids[0] == data.ids[5]);
  CHECK_THROWS_AS(data.subset({"missing"}), std::invalid_argument);
  std::remove((stem + ".tensors.bin").c_str());
  std::remove((stem + ".labels.csv").c_str());
}

TEST_CASE("resampling down and up") {
  Dataset data;
  data.side = 4;
  data.channels = 1;
  data.pattern_names = {"p"};
  data.ids = {"a"};
  data.labels = {1};
  data.tensors = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};

  const Dataset down = resample_dataset(data, 2);
  CHECK(down.tensors == std::vector<float>{2.5f, 4.5f, 10.5f, 12.5f});
  const Dataset up = resample_dataset(down, 4);
  CHECK(up.tensors[0] == 2.5f);
  CHECK(up.tensors[1] == 2.5f);
  CHECK(up.tensors[5] == 2.5f);
  CHECK_THROWS_AS(resample_dataset(data, 3), std::invalid_argument);
}
