#include "sgt/baselines.hpp"

#include <stdexcept>

namespace sgt {

void SrcModel::validate() const {
  if (dictionary.cols() < 1)
    throw std::invalid_argument("SRC dictionary must have >= 1 column");
  if (static_cast<int>(dictionary_labels.size()) != dictionary.cols())
    throw std::invalid_argument("SRC dictionary label count mismatch");
  if (class_count < 1) throw std::invalid_argument("SRC class_count must be >= 1");
  for (int l : dictionary_labels)
    if (l < 0 || l >= class_count)
      throw std::invalid_argument("SRC dictionary label outside [0, c)");
}

SrcResult src_classify(const SrcModel& model, const Vector& query) {
  model.validate();
  const SparseCoefVector coef = solve_lasso(model.dictionary, query, model.lasso_cfg);

  SrcResult result;
  result.residuals.resize(model.class_count);
  for (int k = 0; k < model.class_count; ++k) {
    Vector masked = coef.values;
    for (int j = 0; j < masked.size(); ++j)
      if (model.dictionary_labels[j] != k) masked(j) = 0.0;
    result.residuals(k) = (query - model.dictionary * masked).norm();
  }
  result.label = 0;
  for (int k = 1; k < model.class_count; ++k)
    if (result.residuals(k) < result.residuals(result.label)) result.label = k;
  return result;
}

SrcModel make_src_model(const FeatureDataset& ds, const LassoConfig& cfg) {
  const int m = ds.labeled_count();
  if (m < 1) throw std::invalid_argument("SRC needs at least one labeled sample");
  SrcModel model;
  model.dictionary.resize(ds.dim(), m);
  model.dictionary_labels.resize(m);
  model.class_count = ds.class_count;
  model.lasso_cfg = cfg;
  int t = 0;
  for (int i = 0; i < ds.size(); ++i) {
    if (!ds.labeled[i]) continue;
    model.dictionary.col(t) = ds.features.col(i);
    model.dictionary_labels[t] = ds.labels[i];
    ++t;
  }
  return model;
}

std::vector<int> src_classify_all(const FeatureDataset& ds, const LassoConfig& cfg) {
  const SrcModel model = make_src_model(ds, cfg);
  std::vector<int> labels(ds.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < ds.size(); ++i)
    labels[i] = src_classify(model, ds.features.col(i)).label;
  return labels;
}

std::vector<int> gc_classify(const FeatureDataset& ds, int k, double sigma,
                             const TransductionConfig& t_cfg) {
  AffinityGraph g;
  try {
    g = build_knn_heat_graph(ds, k, sigma);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("graph stage failed: ") + e.what());
  }
  return transduce_on_graph(ds, g, t_cfg);
}

}  // namespace sgt
