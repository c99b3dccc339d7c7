#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sgt/baselines.hpp"

namespace sgt {

/// A transductive classifier: receives the dataset with its labeled mask
/// set and returns a predicted class per sample.
using Classifier = std::function<std::vector<int>(const FeatureDataset&)>;

struct Method {
  std::string name;
  Classifier classify;
};

// Standard method handles. Each one l2-normalizes the columns of the
// dataset it receives before classifying. sigma <= 0 selects the median
// pairwise distance of the (normalized) data.
Method make_sgc_method(const LassoConfig& lasso_cfg, const TransductionConfig& t_cfg);
Method make_gc_method(int k, double sigma, const TransductionConfig& t_cfg);
Method make_src_method(const LassoConfig& lasso_cfg);

struct CvSpec {
  int folds = 2;
  int train_fold_count = 1;  // folds used as the labeled set
  std::uint64_t seed = 0;
  bool stratified = true;

  void validate() const;
};

struct ExperimentResult {
  std::string method;
  std::string param;                  // "beta=...;lambda=..." or empty
  double level = 0.0;                 // noise level / training proportion
  std::vector<double> per_fold_error; // percent
  double mean = 0.0;
  double std_dev = 0.0;
  double wall_time = 0.0;             // seconds; diagnostic only, never serialized
};

/// Fold id in [0, folds) per sample. Stratified partitions deal each
/// class's shuffled samples round-robin so folds differ by at most one
/// sample per class.
std::vector<int> make_folds(const FeatureDataset& ds, const CvSpec& spec);

/// Inverted-role cross-validation: per rotation, train_fold_count folds are
/// labeled and everything else is the unlabeled evaluation set. Error is
/// misclassified unlabeled / total unlabeled * 100.
ExperimentResult cross_validate(const FeatureDataset& ds, const CvSpec& spec,
                                const Method& method);

/// Salt-and-pepper corruption of the full dataset at each level, then CV.
/// The fold seed is fixed across levels so only the noise varies.
std::vector<ExperimentResult> noise_sweep(const FeatureDataset& ds,
                                          const std::vector<double>& levels,
                                          const CvSpec& spec,
                                          const std::vector<Method>& methods);

/// Training proportion p maps to folds = round(1/p) with one labeled fold.
std::vector<ExperimentResult> size_sweep(const FeatureDataset& ds,
                                         const std::vector<double>& proportions,
                                         const std::vector<Method>& methods,
                                         std::uint64_t seed, bool stratified = true);

/// SGC error over a (beta, lambda) grid.
std::vector<ExperimentResult> param_sweep(const FeatureDataset& ds,
                                          const std::vector<double>& beta_grid,
                                          const std::vector<double>& lambda_grid,
                                          const CvSpec& spec,
                                          const LassoConfig& lasso_base,
                                          const TransductionConfig& t_base);

// Flat CSV (method, param, level, mean, std) and JSON with config snapshot
// plus per-fold detail. Outputs are byte-stable across reruns.
void write_results_csv(const std::string& path,
                       const std::vector<ExperimentResult>& results);
void write_results_json(const std::string& path,
                        const std::vector<ExperimentResult>& results,
                        const std::string& config_json);

}  // namespace sgt
