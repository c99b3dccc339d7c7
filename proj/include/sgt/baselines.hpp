#pragma once

#include <vector>

#include "sgt/transduct.hpp"

namespace sgt {

/// Sparse-representation classifier over a labeled training dictionary.
struct SrcModel {
  Matrix dictionary;                   // d x m training columns
  std::vector<int> dictionary_labels;  // class id per column
  int class_count = 0;
  LassoConfig lasso_cfg;

  void validate() const;
};

struct SrcResult {
  int label = 0;
  Vector residuals;  // per-class reconstruction residual, length c
};

/// Codes the query against the training dictionary, then picks the class
/// whose coefficients reconstruct it best: r_k = ||x - D delta_k(c)||_2,
/// label = argmin_k r_k (ties to the smallest k).
SrcResult src_classify(const SrcModel& model, const Vector& query);

SrcModel make_src_model(const FeatureDataset& ds, const LassoConfig& cfg);

/// SRC predictions for every sample of a masked dataset; the dictionary is
/// the labeled samples. Queries are classified independently in parallel.
std::vector<int> src_classify_all(const FeatureDataset& ds, const LassoConfig& cfg);

/// Heat-kernel kNN graph transduction; same contract as sgc_classify with
/// build_knn_heat_graph substituted for the sparse graph.
std::vector<int> gc_classify(const FeatureDataset& ds, int k, double sigma,
                             const TransductionConfig& t_cfg);

}  // namespace sgt
