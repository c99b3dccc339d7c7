#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sgt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr int kUnlabeled = -1;

/// Column-major sample matrix plus per-sample labels and a labeled mask.
/// Samples are columns of `features` (d rows, n columns). A label of
/// kUnlabeled with labeled[i]=false marks sample i as unlabeled.
struct FeatureDataset {
  Matrix features;                     // d x n
  std::vector<int> labels;             // dense class ids in [0, c), or kUnlabeled
  std::vector<char> labeled;           // mask, one flag per sample
  int class_count = 0;                 // c >= 2
  double range_min = 0.0;              // valid per-entry value range,
  double range_max = 1.0;              // used for noise injection
  std::vector<int> original_labels;    // file label for each dense class id

  int dim() const { return static_cast<int>(features.rows()); }
  int size() const { return static_cast<int>(features.cols()); }
  int labeled_count() const;
  int unlabeled_count() const { return size() - labeled_count(); }

  // Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

enum class DatasetFormat { csv, binary };

DatasetFormat parse_format(const std::string& name);

FeatureDataset load_dataset(const std::string& path, DatasetFormat format);
void save_dataset(const FeatureDataset& ds, const std::string& path,
                  DatasetFormat format);

/// Rescales every nonzero column to unit Euclidean norm. Zero columns and
/// labels are untouched. Idempotent.
FeatureDataset normalize_columns(FeatureDataset ds);

struct NoiseSpec {
  double proportion = 0.0;             // fraction of entries corrupted per sample
  std::uint64_t seed = 0;
  std::optional<double> low;           // defaults to the dataset feature range
  std::optional<double> high;

  void validate() const;
};

/// Salt-and-pepper corruption: per sample, exactly round(proportion * d)
/// entries chosen uniformly without replacement are set to low or high with
/// probability 1/2 each. Deterministic given the seed.
FeatureDataset inject_salt_pepper(const FeatureDataset& ds, const NoiseSpec& spec);

/// Gaussian clusters with pairwise center distance >= separation.
/// Labels are the cluster index; all samples start labeled.
FeatureDataset make_blobs(int class_count, int per_class, int dim,
                          double separation, double sigma, std::uint64_t seed);

}  // namespace sgt
