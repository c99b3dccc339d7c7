#include "sgt/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sgt/rng.hpp"

namespace sgt {

namespace {

constexpr char kBinaryMagic[4] = {'S', 'G', 'T', 'D'};
constexpr std::uint32_t kBinaryVersion = 1;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool parse_int(const std::string& s, long& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e && b != e;
}

bool parse_double(const std::string& s, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

// Remaps raw file labels to dense ids [0, c) in ascending raw-label order.
// Raw label -1 stays unlabeled.
void remap_labels(FeatureDataset& ds, const std::vector<long>& raw) {
  std::map<long, int> dense;
  for (long r : raw)
    if (r != kUnlabeled) dense.emplace(r, 0);
  int next = 0;
  for (auto& [r, id] : dense) id = next++;
  ds.class_count = std::max(next, 2);
  ds.labels.resize(raw.size());
  ds.labeled.resize(raw.size());
  ds.original_labels.assign(ds.class_count, 0);
  for (auto& [r, id] : dense) ds.original_labels[id] = static_cast<int>(r);
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == kUnlabeled) {
      ds.labels[i] = kUnlabeled;
      ds.labeled[i] = 0;
    } else {
      ds.labels[i] = dense.at(raw[i]);
      ds.labeled[i] = 1;
    }
  }
}

FeatureDataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);

  std::vector<std::vector<double>> rows;
  std::vector<long> raw_labels;
  std::string line;
  size_t line_no = 0;
  size_t width = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    long label;
    if (first_content && !parse_int(fields[0], label)) {
      // optional header
      first_content = false;
      continue;
    }
    first_content = false;
    if (fields.size() < 2)
      throw std::runtime_error(path + ": row " + std::to_string(line_no) +
                               " has no feature columns");
    if (width == 0) width = fields.size();
    if (fields.size() != width)
      throw std::runtime_error(path + ": row " + std::to_string(line_no) +
                               " has width " + std::to_string(fields.size()) +
                               ", expected " + std::to_string(width));
    if (!parse_int(fields[0], label))
      throw std::runtime_error(path + ": row " + std::to_string(line_no) +
                               " has non-integer label '" + fields[0] + "'");
    std::vector<double> row(width - 1);
    for (size_t j = 1; j < width; ++j) {
      if (!parse_double(fields[j], row[j - 1]))
        throw std::runtime_error(path + ": row " + std::to_string(line_no) +
                                 " has non-numeric feature '" + fields[j] + "'");
    }
    raw_labels.push_back(label);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": empty dataset file");

  FeatureDataset ds;
  const int d = static_cast<int>(width - 1);
  const int n = static_cast<int>(rows.size());
  ds.features.resize(d, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) ds.features(j, i) = rows[i][j];
  remap_labels(ds, raw_labels);
  ds.range_min = ds.features.minCoeff();
  ds.range_max = ds.features.maxCoeff();
  ds.validate();
  return ds;
}

template <typename T>
void read_raw(std::istream& in, T* out, size_t count, const std::string& path) {
  in.read(reinterpret_cast<char*>(out), static_cast<std::streamsize>(count * sizeof(T)));
  if (!in) throw std::runtime_error(path + ": truncated binary dataset");
}

FeatureDataset load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  char magic[4];
  read_raw(in, magic, 4, path);
  if (std::memcmp(magic, kBinaryMagic, 4) != 0)
    throw std::runtime_error(path + ": bad magic, not an SGTD file");
  std::uint32_t version, d, n;
  read_raw(in, &version, 1, path);
  if (version != kBinaryVersion)
    throw std::runtime_error(path + ": unsupported version " + std::to_string(version));
  read_raw(in, &d, 1, path);
  read_raw(in, &n, 1, path);
  if (d == 0 || n == 0) throw std::runtime_error(path + ": empty dataset file");

  std::vector<std::int32_t> labels32(n);
  read_raw(in, labels32.data(), n, path);
  FeatureDataset ds;
  ds.features.resize(d, n);
  read_raw(in, ds.features.data(), static_cast<size_t>(d) * n, path);

  std::vector<long> raw(labels32.begin(), labels32.end());
  remap_labels(ds, raw);
  ds.range_min = ds.features.minCoeff();
  ds.range_max = ds.features.maxCoeff();
  ds.validate();
  return ds;
}

}  // namespace

int FeatureDataset::labeled_count() const {
  int c = 0;
  for (char f : labeled) c += f != 0;
  return c;
}

void FeatureDataset::validate() const {
  if (size() < 2) throw std::invalid_argument("dataset needs n >= 2 samples");
  if (dim() < 1) throw std::invalid_argument("dataset needs d >= 1 features");
  if (class_count < 2) throw std::invalid_argument("dataset needs c >= 2 classes");
  if (static_cast<int>(labels.size()) != size() ||
      static_cast<int>(labeled.size()) != size())
    throw std::invalid_argument("label/mask length does not match sample count");
  if (!features.allFinite())
    throw std::invalid_argument("dataset contains non-finite feature entries");
  for (int i = 0; i < size(); ++i) {
    if (labeled[i] && (labels[i] < 0 || labels[i] >= class_count))
      throw std::invalid_argument("labeled sample " + std::to_string(i) +
                                  " has class id outside [0, c)");
  }
}

DatasetFormat parse_format(const std::string& name) {
  if (name == "csv") return DatasetFormat::csv;
  if (name == "binary") return DatasetFormat::binary;
  throw std::invalid_argument("unknown dataset format: " + name);
}

FeatureDataset load_dataset(const std::string& path, DatasetFormat format) {
  return format == DatasetFormat::csv ? load_csv(path) : load_binary(path);
}

void save_dataset(const FeatureDataset& ds, const std::string& path,
                  DatasetFormat format) {
  auto file_label = [&](int i) -> long {
    if (!ds.labeled[i]) return kUnlabeled;
    if (ds.labels[i] < static_cast<int>(ds.original_labels.size()))
      return ds.original_labels[ds.labels[i]];
    return ds.labels[i];
  };
  if (format == DatasetFormat::csv) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset file: " + path);
    out.precision(17);
    for (int i = 0; i < ds.size(); ++i) {
      out << file_label(i);
      for (int j = 0; j < ds.dim(); ++j) out << ',' << ds.features(j, i);
      out << '\n';
    }
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  out.write(kBinaryMagic, 4);
  const std::uint32_t version = kBinaryVersion;
  const std::uint32_t d = static_cast<std::uint32_t>(ds.dim());
  const std::uint32_t n = static_cast<std::uint32_t>(ds.size());
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&d), 4);
  out.write(reinterpret_cast<const char*>(&n), 4);
  for (int i = 0; i < ds.size(); ++i) {
    const std::int32_t l = static_cast<std::int32_t>(file_label(i));
    out.write(reinterpret_cast<const char*>(&l), 4);
  }
  out.write(reinterpret_cast<const char*>(ds.features.data()),
            static_cast<std::streamsize>(sizeof(double) * d * n));
}

FeatureDataset normalize_columns(FeatureDataset ds) {
  for (int i = 0; i < ds.size(); ++i) {
    const double norm = ds.features.col(i).norm();
    if (norm > 0.0) ds.features.col(i) /= norm;
  }
  return ds;
}

void NoiseSpec::validate() const {
  if (!(proportion >= 0.0 && proportion <= 1.0))
    throw std::invalid_argument("noise proportion must be in [0, 1]");
  if (low && high && *low > *high)
    throw std::invalid_argument("noise requires low <= high");
}

FeatureDataset inject_salt_pepper(const FeatureDataset& ds, const NoiseSpec& spec) {
  spec.validate();
  const double low = spec.low.value_or(ds.range_min);
  const double high = spec.high.value_or(ds.range_max);
  if (low > high) throw std::invalid_argument("noise requires low <= high");

  FeatureDataset out = ds;
  const int d = ds.dim();
  const int corrupt = static_cast<int>(std::lround(spec.proportion * d));
  if (corrupt == 0) return out;

  std::vector<int> idx(d);
  for (int i = 0; i < ds.size(); ++i) {
    // independent per-sample stream, stable under sample-parallel callers
    auto rng = make_rng(spec.seed, static_cast<std::uint64_t>(i));
    for (int j = 0; j < d; ++j) idx[j] = j;
    // partial Fisher-Yates: first `corrupt` slots are a uniform sample
    for (int j = 0; j < corrupt; ++j) {
      std::uniform_int_distribution<int> pick(j, d - 1);
      std::swap(idx[j], idx[pick(rng)]);
    }
    for (int j = 0; j < corrupt; ++j) {
      const bool salt = (rng() & 1ULL) != 0;
      out.features(idx[j], i) = salt ? high : low;
    }
  }
  return out;
}

FeatureDataset make_blobs(int class_count, int per_class, int dim,
                          double separation, double sigma, std::uint64_t seed) {
  if (class_count < 1 || per_class < 1 || dim < 1)
    throw std::invalid_argument("make_blobs counts must be >= 1");
  if (!(separation > 0.0) || !(sigma > 0.0))
    throw std::invalid_argument("make_blobs needs separation > 0 and sigma > 0");

  // Center k sits on axis (k mod dim) at radius (1 + k/dim) * separation;
  // any two such centers are at least `separation` apart.
  Matrix centers = Matrix::Zero(dim, class_count);
  for (int k = 0; k < class_count; ++k)
    centers(k % dim, k) = (1 + k / dim) * separation;

  FeatureDataset ds;
  const int n = class_count * per_class;
  ds.features.resize(dim, n);
  ds.labels.resize(n);
  ds.labeled.assign(n, 1);
  ds.class_count = std::max(class_count, 2);
  ds.original_labels.resize(ds.class_count);
  for (int k = 0; k < ds.class_count; ++k) ds.original_labels[k] = k;

  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int col = 0;
  for (int k = 0; k < class_count; ++k) {
    for (int s = 0; s < per_class; ++s, ++col) {
      for (int j = 0; j < dim; ++j)
        ds.features(j, col) = centers(j, k) + sigma * gauss(rng);
      ds.labels[col] = k;
    }
  }
  ds.range_min = ds.features.minCoeff();
  ds.range_max = ds.features.maxCoeff();
  ds.validate();
  return ds;
}

}  // namespace sgt
