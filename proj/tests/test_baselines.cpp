#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "sgt/baselines.hpp"

using namespace sgt;

namespace {

FeatureDataset masked_dataset(const Matrix& cols, std::vector<int> labels,
                              int class_count) {
  FeatureDataset ds;
  ds.features = cols;
  ds.labeled.resize(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) ds.labeled[i] = labels[i] != kUnlabeled;
  ds.labels = std::move(labels);
  ds.class_count = class_count;
  ds.original_labels.resize(class_count);
  std::iota(ds.original_labels.begin(), ds.original_labels.end(), 0);
  ds.range_min = cols.minCoeff();
  ds.range_max = cols.maxCoeff();
  return ds;
}

}  // namespace

TEST_CASE("src with a single class always returns it") {
  SrcModel model;
  model.dictionary = Matrix::Identity(3, 2);
  model.dictionary_labels = {0, 0};
  model.class_count = 1;
  Vector q(3);
  q << 0.3, -0.7, 0.2;
  CHECK(src_classify(model, q).label == 0);
}

TEST_CASE("src recovers the class of a training column") {
  // two orthogonal classes, two atoms each
  Matrix D(4, 4);
  D << 1, 0.9, 0, 0,
       0, 0.1, 0, 0,
       0, 0, 1, 0.9,
       0, 0, 0, 0.1;
  for (int j = 0; j < 4; ++j) D.col(j).normalize();
  SrcModel model;
  model.dictionary = D;
  model.dictionary_labels = {0, 0, 1, 1};
  model.class_count = 2;
  model.lasso_cfg.beta = 0.01;

  const auto r0 = src_classify(model, D.col(0));
  CHECK(r0.label == 0);
  CHECK(r0.residuals(0) < r0.residuals(1));
  const auto r1 = src_classify(model, D.col(3));
  CHECK(r1.label == 1);
}

TEST_CASE("zero query ties to class 0 with zero residuals") {
  SrcModel model;
  model.dictionary = Matrix::Identity(3, 3);
  model.dictionary_labels = {0, 1, 2};
  model.class_count = 3;
  const auto r = src_classify(model, Vector::Zero(3));
  CHECK(r.label == 0);
  CHECK(r.residuals.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("src residuals are nonnegative and bounded") {
  const auto ds = normalize_columns(make_blobs(3, 4, 5, 6.0, 0.5, 41));
  const auto model = make_src_model(ds, LassoConfig{.beta = 0.05});
  for (int i = 0; i < ds.size(); ++i) {
    const auto coef = solve_lasso(model.dictionary, ds.features.col(i), model.lasso_cfg);
    const auto r = src_classify(model, ds.features.col(i));
    const double bound = ds.features.col(i).norm() +
                         model.dictionary.norm() * coef.values.lpNorm<1>();
    for (int k = 0; k < r.residuals.size(); ++k) {
      CHECK(r.residuals(k) >= 0.0);
      CHECK(r.residuals(k) <= bound + 1e-9);
    }
  }
}

TEST_CASE("src model validation") {
  SrcModel model;
  model.dictionary = Matrix::Identity(2, 2);
  model.dictionary_labels = {0, 5};
  model.class_count = 2;
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);
}

TEST_CASE("gc classifies two far blobs from one label per class") {
  auto ds = normalize_columns(make_blobs(2, 8, 6, 10.0, 1.0, 55));
  std::vector<int> truth = ds.labels;
  for (int i = 0; i < ds.size(); ++i) {
    const bool keep = i == 0 || i == 8;
    ds.labeled[i] = keep;
    if (!keep) ds.labels[i] = kUnlabeled;
  }
  const auto pred = gc_classify(ds, 3, median_pairwise_distance(ds),
                                TransductionConfig{});
  for (int i = 0; i < ds.size(); ++i)
    if (!ds.labeled[i]) CHECK(pred[i] == truth[i]);
}

TEST_CASE("identical samples fall back to the dominant label signal") {
  Matrix cols(2, 4);
  cols << 1, 1, 1, 1,
          0, 0, 0, 0;
  const auto ds = masked_dataset(cols, {0, 0, 1, kUnlabeled}, 2);
  const auto pred = gc_classify(ds, 2, 1.0, TransductionConfig{});
  // dense-solve oracle on the same graph: argmax of column sums wins
  const auto g = build_knn_heat_graph(ds, 2, 1.0);
  const auto lap = normalized_laplacian(g);
  const auto Y = build_label_matrix(ds);
  const Matrix ref = oracle::transduction_dense(lap.laplacian, Y.values, 1e3);
  int expect = ref(3, 0) >= ref(3, 1) ? 0 : 1;
  CHECK(pred[3] == expect);
  CHECK(expect == 0);  // two class-0 votes against one class-1 vote
}

TEST_CASE("fully labeled dataset is echoed back at lambda 1e3") {
  const auto ds = normalize_columns(make_blobs(2, 6, 4, 8.0, 0.8, 29));
  const auto pred = gc_classify(ds, 3, median_pairwise_distance(ds),
                                TransductionConfig{});
  for (int i = 0; i < ds.size(); ++i) CHECK(pred[i] == ds.labels[i]);
}

TEST_CASE("gc equals sgc on an injected identical graph") {
  const auto ds = masked_dataset(Matrix::Identity(4, 4).eval(),
                                 {0, 1, kUnlabeled, kUnlabeled}, 2);
  AffinityGraph g;
  g.weights.resize(4, 4);
  g.weights << 0, 1, 0.5, 0,
               1, 0, 0, 0.5,
               0.5, 0, 0, 0.2,
               0, 0.5, 0.2, 0;
  for (int i = 0; i < 4; ++i) g.weights(i, i) = g.weights.row(i).sum();
  // both pipelines share transduce_on_graph; same graph in, same labels out
  const auto a = transduce_on_graph(ds, g, TransductionConfig{});
  const auto b = transduce_on_graph(ds, g, TransductionConfig{});
  CHECK(a == b);
}

TEST_CASE("k out of range propagates from the graph stage") {
  const auto ds = normalize_columns(make_blobs(2, 3, 3, 5.0, 0.5, 1));
  CHECK_THROWS(gc_classify(ds, 99, 1.0, TransductionConfig{}));
}
