#include "imbal/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace imbal {

const std::vector<std::string>& chest_xray14_patterns() {
  static const std::vector<std::string> names = {
      "Hernia",        "Pneumonia",    "Fibrosis",  "Edema",
      "Emphysema",     "Cardiomegaly", "Pleural_Thickening",
      "Consolidation", "Pneumothorax", "Mass",      "Nodule",
      "Atelectasis",   "Effusion",     "Infiltration"};
  return names;
}

std::string normalize_pattern_name(const std::string& name) {
  static const std::unordered_map<std::string, std::string> table = {
      {"Pleural Thickening", "Pleural_Thickening"},
      {"Pleural Thick.", "Pleural_Thickening"},
  };
  auto it = table.find(name);
  return it == table.end() ? name : it->second;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string patient_prefix(const std::string& id) {
  const auto pos = id.find('_');
  return pos == std::string::npos ? id : id.substr(0, pos);
}

}  // namespace

std::vector<LabelRecord> parse_labels(std::istream& in,
                                      const std::vector<std::string>& vocabulary) {
  std::set<std::string> vocab(vocabulary.begin(), vocabulary.end());
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("parse_labels: empty input");
  const auto header = split_csv_line(line);
  long long id_col = -1, findings_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "Image Index") id_col = static_cast<long long>(i);
    if (header[i] == "Finding Labels") findings_col = static_cast<long long>(i);
  }
  if (id_col < 0 || findings_col < 0)
    throw std::invalid_argument(
        "parse_labels: required columns 'Image Index' and 'Finding Labels' not found");

  std::vector<LabelRecord> records;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (static_cast<long long>(fields.size()) <= std::max(id_col, findings_col))
      throw std::invalid_argument("parse_labels: malformed row " + std::to_string(row));
    LabelRecord rec;
    rec.image_id = fields[static_cast<std::size_t>(id_col)];
    if (rec.image_id.empty())
      throw std::invalid_argument("parse_labels: empty image id at row " + std::to_string(row));
    const std::string& raw = fields[static_cast<std::size_t>(findings_col)];
    if (raw != "No Finding" && !raw.empty()) {
      std::stringstream ss(raw);
      std::string item;
      std::vector<std::string> unknown;
      while (std::getline(ss, item, '|')) {
        item = normalize_pattern_name(item);
        if (!vocab.count(item))
          unknown.push_back(item);
        else
          rec.findings.push_back(item);
      }
      if (!unknown.empty()) {
        std::string msg = "parse_labels: unknown findings at row " + std::to_string(row) + ":";
        for (const auto& u : unknown) msg += " " + u;
        throw std::invalid_argument(msg);
      }
      std::sort(rec.findings.begin(), rec.findings.end());
      rec.findings.erase(std::unique(rec.findings.begin(), rec.findings.end()),
                         rec.findings.end());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_labels_csv(std::ostream& out, const std::vector<LabelRecord>& records) {
  out << "Image Index,Finding Labels\n";
  for (const LabelRecord& rec : records) {
    out << rec.image_id << ',';
    if (rec.findings.empty()) {
      out << "No Finding";
    } else {
      for (std::size_t i = 0; i < rec.findings.size(); ++i) {
        if (i) out << '|';
        out << rec.findings[i];
      }
    }
    out << '\n';
  }
}

ClassCounts class_counts(const std::vector<LabelRecord>& records,
                         const std::vector<std::string>& vocabulary,
                         const std::set<std::string>* membership) {
  ClassCounts counts;
  counts.pattern_names = vocabulary;
  counts.positives.assign(vocabulary.size(), 0);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < vocabulary.size(); ++k) index[vocabulary[k]] = k;

  long long total = 0;
  for (const LabelRecord& rec : records) {
    if (membership && !membership->count(rec.image_id)) continue;
    ++total;
    for (const std::string& f : rec.findings) {
      auto it = index.find(f);
      if (it == index.end())
        throw std::invalid_argument("class_counts: finding outside vocabulary: " + f);
      ++counts.positives[it->second];
    }
  }
  if (total == 0) throw std::invalid_argument("class_counts: empty split");
  counts.total_samples = total;
  counts.negatives.resize(vocabulary.size());
  for (std::size_t k = 0; k < vocabulary.size(); ++k)
    counts.negatives[k] = total - counts.positives[k];
  return counts;
}

void SplitSpec::validate() const {
  switch (kind) {
    case SplitKind::OfficialStyle:
      if (train_val_ids.empty() || test_ids.empty())
        throw std::invalid_argument("SplitSpec: both list files required");
      if (!(val_fraction > 0.0 && val_fraction < 1.0))
        throw std::invalid_argument("SplitSpec: val_fraction must be in (0,1)");
      break;
    case SplitKind::KFold:
      if (k < 2) throw std::invalid_argument("SplitSpec: k must be >= 2");
      if (fold < 0 || fold >= k) throw std::invalid_argument("SplitSpec: fold out of range");
      break;
    case SplitKind::Ratio: {
      const double sum = train_ratio + val_ratio + test_ratio;
      if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("SplitSpec: ratios must sum to 1");
      if (train_ratio <= 0.0 || val_ratio < 0.0 || test_ratio < 0.0)
        throw std::invalid_argument("SplitSpec: invalid ratios");
      break;
    }
  }
}

namespace {

// Units are either single ids or whole patient groups.
std::vector<std::vector<std::string>> split_units(const std::vector<std::string>& ids,
                                                  bool patient_grouped) {
  if (!patient_grouped) {
    std::vector<std::vector<std::string>> units;
    units.reserve(ids.size());
    for (const auto& id : ids) units.push_back({id});
    return units;
  }
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& id : ids) groups[patient_prefix(id)].push_back(id);
  std::vector<std::vector<std::string>> units;
  units.reserve(groups.size());
  for (auto& [prefix, members] : groups) units.push_back(std::move(members));
  return units;
}

void append_units(std::vector<std::string>& out,
                  const std::vector<std::vector<std::string>>& units, std::size_t begin,
                  std::size_t end) {
  for (std::size_t i = begin; i < end; ++i)
    out.insert(out.end(), units[i].begin(), units[i].end());
}

}  // namespace

SplitResult make_split(const std::vector<LabelRecord>& records, const SplitSpec& spec) {
  spec.validate();
  std::set<std::string> known;
  for (const LabelRecord& rec : records) known.insert(rec.image_id);

  SplitResult result;
  std::mt19937_64 rng(spec.seed);

  if (spec.kind == SplitKind::OfficialStyle) {
    std::set<std::string> test_set(spec.test_ids.begin(), spec.test_ids.end());
    for (const auto& id : spec.train_val_ids) {
      if (test_set.count(id))
        throw std::invalid_argument("make_split: id in both list files: " + id);
      if (!known.count(id)) throw std::invalid_argument("make_split: unknown id: " + id);
    }
    for (const auto& id : spec.test_ids)
      if (!known.count(id)) throw std::invalid_argument("make_split: unknown id: " + id);

    auto units = split_units(spec.train_val_ids, spec.patient_grouped);
    std::shuffle(units.begin(), units.end(), rng);
    std::size_t val_units =
        static_cast<std::size_t>(std::llround(spec.val_fraction * units.size()));
    val_units = std::min(std::max<std::size_t>(val_units, 1), units.size() - 1);
    append_units(result.val, units, 0, val_units);
    append_units(result.train, units, val_units, units.size());
    result.test = spec.test_ids;
    return result;
  }

  std::vector<std::string> ids;
  ids.reserve(records.size());
  for (const LabelRecord& rec : records) ids.push_back(rec.image_id);
  auto units = split_units(ids, spec.patient_grouped);
  std::shuffle(units.begin(), units.end(), rng);
  const std::size_t n = units.size();

  if (spec.kind == SplitKind::KFold) {
    const std::size_t lo = static_cast<std::size_t>(spec.fold) * n / spec.k;
    const std::size_t hi = static_cast<std::size_t>(spec.fold + 1) * n / spec.k;
    append_units(result.test, units, lo, hi);
    std::vector<std::vector<std::string>> rest;
    rest.insert(rest.end(), units.begin(), units.begin() + lo);
    rest.insert(rest.end(), units.begin() + hi, units.end());
    std::size_t val_units = std::max<std::size_t>(1, rest.size() / 10);
    if (val_units >= rest.size()) val_units = rest.size() - 1;
    append_units(result.val, rest, 0, val_units);
    append_units(result.train, rest, val_units, rest.size());
    return result;
  }

  const std::size_t n_train = static_cast<std::size_t>(std::llround(spec.train_ratio * n));
  const std::size_t n_val = static_cast<std::size_t>(std::llround(spec.val_ratio * n));
  const std::size_t train_end = std::min(n_train, n);
  const std::size_t val_end = std::min(train_end + n_val, n);
  append_units(result.train, units, 0, train_end);
  append_units(result.val, units, train_end, val_end);
  append_units(result.test, units, val_end, n);
  return result;
}

void write_split_manifest(std::ostream& out, const SplitResult& split) {
  out << "image_id,subset\n";
  for (const auto& id : split.train) out << id << ",train\n";
  for (const auto& id : split.val) out << id << ",val\n";
  for (const auto& id : split.test) out << id << ",test\n";
}

SplitResult read_split_manifest(std::istream& in) {
  SplitResult result;
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"image_id", "subset"})
    throw std::invalid_argument("split manifest: bad header");
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2)
      throw std::invalid_argument("split manifest: malformed row " + std::to_string(row));
    if (fields[1] == "train")
      result.train.push_back(fields[0]);
    else if (fields[1] == "val")
      result.val.push_back(fields[0]);
    else if (fields[1] == "test")
      result.test.push_back(fields[0]);
    else
      throw std::invalid_argument("split manifest: unknown subset " + fields[1]);
  }
  return result;
}

void SynthSpec::validate() const {
  if (patterns.empty()) throw std::invalid_argument("SynthSpec: at least one pattern");
  for (const SynthPattern& pat : patterns) {
    if (!(pat.prevalence > 0.0 && pat.prevalence < 1.0))
      throw std::invalid_argument("SynthSpec: prevalence must be in (0,1) for " + pat.name);
    if (pat.blob_sigma <= 0.0)
      throw std::invalid_argument("SynthSpec: blob_sigma must be > 0");
  }
  if (count < 1) throw std::invalid_argument("SynthSpec: sample count must be >= 1");
  if (side < 4) throw std::invalid_argument("SynthSpec: side must be >= 4");
  if (channels < 1) throw std::invalid_argument("SynthSpec: channels must be >= 1");
}

int pattern_quadrant(std::size_t pattern_index) {
  return static_cast<int>(pattern_index % 4);
}

Tensor Dataset::sample_tensor(std::size_t index) const {
  Tensor t({1, channels, side, side});
  const std::size_t n = sample_floats();
  const float* src = tensors.data() + index * n;
  for (std::size_t i = 0; i < n; ++i) t.v[i] = static_cast<double>(src[i]);
  return t;
}

Dataset Dataset::subset(const std::vector<std::string>& keep_ids) const {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
  Dataset out;
  out.side = side;
  out.channels = channels;
  out.pattern_names = pattern_names;
  const std::size_t n = sample_floats();
  const std::size_t c = num_classes();
  for (const auto& id : keep_ids) {
    auto it = index.find(id);
    if (it == index.end()) throw std::invalid_argument("Dataset::subset: unknown id " + id);
    out.ids.push_back(id);
    const std::size_t i = it->second;
    out.tensors.insert(out.tensors.end(), tensors.begin() + i * n,
                       tensors.begin() + (i + 1) * n);
    out.labels.insert(out.labels.end(), labels.begin() + i * c, labels.begin() + (i + 1) * c);
  }
  return out;
}

std::vector<LabelRecord> Dataset::records() const {
  std::vector<LabelRecord> recs;
  const std::size_t c = num_classes();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    LabelRecord rec;
    rec.image_id = ids[i];
    for (std::size_t k = 0; k < c; ++k)
      if (labels[i * c + k]) rec.findings.push_back(pattern_names[k]);
    recs.push_back(std::move(rec));
  }
  return recs;
}

Dataset generate_synthetic(const SynthSpec& spec, std::vector<std::string>* warnings) {
  spec.validate();
  const std::size_t c = spec.patterns.size();
  for (std::size_t k = 0; k < c; ++k) {
    if (spec.patterns[k].prevalence * spec.count < 1.0 && warnings)
      warnings->push_back("pattern " + spec.patterns[k].name +
                          ": expected positives < 1 at this sample count");
  }

  Dataset data;
  data.side = spec.side;
  data.channels = spec.channels;
  for (const SynthPattern& pat : spec.patterns) data.pattern_names.push_back(pat.name);
  data.tensors.reserve(static_cast<std::size_t>(spec.count) * spec.channels * spec.side * spec.side);
  data.labels.reserve(static_cast<std::size_t>(spec.count) * c);

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int half = spec.side / 2;

  for (int i = 0; i < spec.count; ++i) {
    std::ostringstream id;
    id << "img" << std::setw(6) << std::setfill('0') << i;
    data.ids.push_back(id.str());

    std::vector<std::uint8_t> lab(c, 0);
    double shared = spec.correlated ? unif(rng) : 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      const double u = spec.correlated ? std::fmod(shared + 0.5 * unif(rng), 1.0) : unif(rng);
      lab[k] = u < spec.patterns[k].prevalence ? 1 : 0;
    }

    std::vector<double> img(static_cast<std::size_t>(spec.channels) * spec.side * spec.side);
    for (double& x : img) x = 0.5 * noise(rng);

    for (std::size_t k = 0; k < c; ++k) {
      if (!lab[k]) continue;
      const int q = pattern_quadrant(k);
      const int qy = (q / 2) * half;
      const int qx = (q % 2) * half;
      // blob center away from the quadrant edge
      const double cy = qy + 1.0 + unif(rng) * (half - 2.0);
      const double cx = qx + 1.0 + unif(rng) * (half - 2.0);
      const double sigma = spec.patterns[k].blob_sigma;
      const double amp = spec.patterns[k].blob_amplitude;
      for (int ch = 0; ch < spec.channels; ++ch) {
        for (int y = 0; y < spec.side; ++y) {
          for (int x = 0; x < spec.side; ++x) {
            const double d2 = (y - cy) * (y - cy) + (x - cx) * (x - cx);
            img[(static_cast<std::size_t>(ch) * spec.side + y) * spec.side + x] +=
                amp * std::exp(-d2 / (2.0 * sigma * sigma));
          }
        }
      }
    }

    for (double x : img) data.tensors.push_back(static_cast<float>(x));
    data.labels.insert(data.labels.end(), lab.begin(), lab.end());
  }
  return data;
}

namespace {

constexpr char kDatasetMagic[8] = {'I', 'M', 'B', 'D', 'A', 'T', 'A', '1'};

void write_string(std::ostream& out, const std::string& s) {
  const std::uint32_t n = static_cast<std::uint32_t>(s.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(s.data(), static_cast<std::streamsize>(n));
}

std::string read_string(std::istream& in) {
  std::uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  std::string s(n, '\0');
  in.read(s.data(), static_cast<std::streamsize>(n));
  return s;
}

}  // namespace

void save_dataset(const Dataset& data, const std::string& stem) {
  std::ofstream bin(stem + ".tensors.bin", std::ios::binary);
  if (!bin) throw std::runtime_error("save_dataset: cannot write " + stem + ".tensors.bin");
  bin.write(kDatasetMagic, sizeof kDatasetMagic);
  const std::int32_t side = data.side, channels = data.channels;
  const std::uint64_t n = data.size(), c = data.num_classes();
  bin.write(reinterpret_cast<const char*>(&side), sizeof side);
  bin.write(reinterpret_cast<const char*>(&channels), sizeof channels);
  bin.write(reinterpret_cast<const char*>(&n), sizeof n);
  bin.write(reinterpret_cast<const char*>(&c), sizeof c);
  for (const auto& name : data.pattern_names) write_string(bin, name);
  for (const auto& id : data.ids) write_string(bin, id);
  bin.write(reinterpret_cast<const char*>(data.labels.data()),
            static_cast<std::streamsize>(data.labels.size()));
  bin.write(reinterpret_cast<const char*>(data.tensors.data()),
            static_cast<std::streamsize>(data.tensors.size() * sizeof(float)));
  if (!bin) throw std::runtime_error("save_dataset: write failed for " + stem);

  std::ofstream csv(stem + ".labels.csv");
  if (!csv) throw std::runtime_error("save_dataset: cannot write " + stem + ".labels.csv");
  write_labels_csv(csv, data.records());
}

Dataset load_dataset(const std::string& stem) {
  std::ifstream bin(stem + ".tensors.bin", std::ios::binary);
  if (!bin) throw std::runtime_error("load_dataset: cannot open " + stem + ".tensors.bin");
  char magic[8];
  bin.read(magic, sizeof magic);
  if (!bin || !std::equal(magic, magic + 8, kDatasetMagic))
    throw std::runtime_error("load_dataset: bad magic in " + stem);
  Dataset data;
  std::int32_t side = 0, channels = 0;
  std::uint64_t n = 0, c = 0;
  bin.read(reinterpret_cast<char*>(&side), sizeof side);
  bin.read(reinterpret_cast<char*>(&channels), sizeof channels);
  bin.read(reinterpret_cast<char*>(&n), sizeof n);
  bin.read(reinterpret_cast<char*>(&c), sizeof c);
  data.side = side;
  data.channels = channels;
  for (std::uint64_t k = 0; k < c; ++k) data.pattern_names.push_back(read_string(bin));
  for (std::uint64_t i = 0; i < n; ++i) data.ids.push_back(read_string(bin));
  data.labels.resize(n * c);
  bin.read(reinterpret_cast<char*>(data.labels.data()),
           static_cast<std::streamsize>(data.labels.size()));
  data.tensors.resize(n * static_cast<std::uint64_t>(channels) * side * side);
  bin.read(reinterpret_cast<char*>(data.tensors.data()),
           static_cast<std::streamsize>(data.tensors.size() * sizeof(float)));
  if (!bin) throw std::runtime_error("load_dataset: truncated file " + stem);
  return data;
}

Dataset resample_dataset(const Dataset& data, int target_side) {
  if (target_side == data.side) return data;
  Dataset out;
  out.side = target_side;
  out.channels = data.channels;
  out.pattern_names = data.pattern_names;
  out.ids = data.ids;
  out.labels = data.labels;
  const std::size_t n = data.size();
  out.tensors.resize(n * static_cast<std::size_t>(data.channels) * target_side * target_side);

  if (data.side % target_side == 0) {
    const int f = data.side / target_side;
    const double inv = 1.0 / (f * f);
    for (std::size_t i = 0; i < n; ++i)
      for (int ch = 0; ch < data.channels; ++ch)
        for (int y = 0; y < target_side; ++y)
          for (int x = 0; x < target_side; ++x) {
            double acc = 0.0;
            for (int dy = 0; dy < f; ++dy)
              for (int dx = 0; dx < f; ++dx)
                acc += data.tensors[((i * data.channels + ch) * data.side + y * f + dy) *
                                        data.side + x * f + dx];
            out.tensors[((i * data.channels + ch) * target_side + y) * target_side + x] =
                static_cast<float>(acc * inv);
          }
  } else if (target_side % data.side == 0) {
    const int f = target_side / data.side;
    for (std::size_t i = 0; i < n; ++i)
      for (int ch = 0; ch < data.channels; ++ch)
        for (int y = 0; y < target_side; ++y)
          for (int x = 0; x < target_side; ++x)
            out.tensors[((i * data.channels + ch) * target_side + y) * target_side + x] =
                data.tensors[((i * data.channels + ch) * data.side + y / f) * data.side + x / f];
  } else {
    throw std::invalid_argument("resample_dataset: sides must divide evenly");
  }
  return out;
}

}  // namespace imbal
