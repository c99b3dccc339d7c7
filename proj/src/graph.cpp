#include "sgt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace sgt {

namespace {

// Coefficient row for one query: codes x_q against all other columns and
// scatters |c_q(j)| back to original sample indices.
void sparse_code_row(const FeatureDataset& ds, const LassoConfig& cfg, int q,
                     Eigen::Ref<Vector> row) {
  const int n = ds.size();
  Matrix dict(ds.dim(), n - 1);
  std::vector<int> original(n - 1);
  int t = 0;
  for (int j = 0; j < n; ++j) {
    if (j == q) continue;
    dict.col(t) = ds.features.col(j);
    original[t] = j;
    ++t;
  }
  SparseCoefVector coef;
  try {
    coef = solve_lasso(dict, ds.features.col(q), cfg);
  } catch (const std::exception& e) {
    throw std::runtime_error("sparse coding failed for query " + std::to_string(q) +
                             ": " + e.what());
  }
  row.setZero();
  for (int j = 0; j < n - 1; ++j) row(original[j]) = std::abs(coef.values(j));
}

// abs_coeffs_t holds |c_q(j)| at (j, q); each query owns one column.
AffinityGraph assemble_from_coeffs(const Matrix& abs_coeffs_t) {
  AffinityGraph g;
  g.weights = (abs_coeffs_t + abs_coeffs_t.transpose()) / 2.0;
  for (int i = 0; i < g.size(); ++i) {
    g.weights(i, i) = 0.0;
    g.weights(i, i) = g.weights.row(i).sum();
  }
  return g;
}

}  // namespace

void AffinityGraph::validate() const {
  if (weights.rows() != weights.cols())
    throw std::invalid_argument("affinity matrix must be square");
  if (!weights.allFinite())
    throw std::invalid_argument("affinity matrix must be finite");
  if (weights.minCoeff() < 0.0)
    throw std::invalid_argument("affinity weights must be nonnegative");
  if ((weights.array() != weights.transpose().array()).any())
    throw std::invalid_argument("affinity matrix must be symmetric");
}

AffinityGraph build_sparse_graph(const FeatureDataset& ds, const LassoConfig& cfg) {
  cfg.validate();
  const int n = ds.size();
  if (n < 2) throw std::invalid_argument("sparse graph needs n >= 2");
  Matrix abs_coeffs_t(n, n);
#pragma omp parallel for schedule(dynamic)
  for (int q = 0; q < n; ++q) sparse_code_row(ds, cfg, q, abs_coeffs_t.col(q));
  return assemble_from_coeffs(abs_coeffs_t);
}

AffinityGraph build_sparse_graph_serial(const FeatureDataset& ds,
                                        const LassoConfig& cfg) {
  cfg.validate();
  const int n = ds.size();
  if (n < 2) throw std::invalid_argument("sparse graph needs n >= 2");
  Matrix abs_coeffs_t(n, n);
  for (int q = 0; q < n; ++q) sparse_code_row(ds, cfg, q, abs_coeffs_t.col(q));
  return assemble_from_coeffs(abs_coeffs_t);
}

AffinityGraph build_knn_heat_graph(const FeatureDataset& ds, int k, double sigma) {
  const int n = ds.size();
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("knn graph needs 1 <= k <= n-1");
  if (!(sigma > 0.0)) throw std::invalid_argument("knn graph needs sigma > 0");

  Matrix dist2(n, n);
  for (int i = 0; i < n; ++i) {
    dist2(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double d2 = (ds.features.col(i) - ds.features.col(j)).squaredNorm();
      dist2(i, j) = d2;
      dist2(j, i) = d2;
    }
  }

  AffinityGraph g;
  g.weights = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> order;
    order.reserve(n - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return dist2(i, a) < dist2(i, b); });
    for (int t = 0; t < k; ++t) {
      const int j = order[t];
      const double w = std::exp(-dist2(i, j) / (2.0 * sigma * sigma));
      // union symmetrization: keep the edge if either endpoint selects it
      g.weights(i, j) = std::max(g.weights(i, j), w);
      g.weights(j, i) = g.weights(i, j);
    }
  }
  for (int i = 0; i < n; ++i) g.weights(i, i) = g.weights.row(i).sum();
  return g;
}

GraphLaplacian normalized_laplacian(const AffinityGraph& g,
                                    bool degree_excludes_diagonal) {
  g.validate();
  const int n = g.size();
  GraphLaplacian lap;
  lap.degrees.resize(n);
  for (int i = 0; i < n; ++i) {
    double deg = g.weights.row(i).sum();
    if (degree_excludes_diagonal) deg -= g.weights(i, i);
    lap.degrees(i) = deg;
  }
  Vector inv_sqrt(n);
  for (int i = 0; i < n; ++i)
    inv_sqrt(i) = lap.degrees(i) > 0.0 ? 1.0 / std::sqrt(lap.degrees(i)) : 0.0;

  lap.laplacian = Matrix::Identity(n, n) -
                  inv_sqrt.asDiagonal() * g.weights * inv_sqrt.asDiagonal();
  lap.laplacian = ((lap.laplacian + lap.laplacian.transpose()) / 2.0).eval();
  return lap;
}

double median_pairwise_distance(const FeatureDataset& ds) {
  const int n = ds.size();
  std::vector<double> dists;
  dists.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dists.push_back((ds.features.col(i) - ds.features.col(j)).norm());
  if (dists.empty()) return 1.0;
  std::sort(dists.begin(), dists.end());
  const size_t mid = dists.size() / 2;
  double med = dists.size() % 2 ? dists[mid] : (dists[mid - 1] + dists[mid]) / 2.0;
  return med > 0.0 ? med : 1.0;
}

void export_graph(const AffinityGraph& g, const std::string& csv_path,
                  const std::string& json_path, const std::string& params_json) {
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write graph file: " + csv_path);
  csv.precision(17);
  csv << "i,j,weight\n";
  for (int i = 0; i < g.size(); ++i)
    for (int j = i; j < g.size(); ++j)
      if (g.weights(i, j) != 0.0) csv << i << ',' << j << ',' << g.weights(i, j) << '\n';

  std::ofstream json(json_path);
  if (!json) throw std::runtime_error("cannot write graph sidecar: " + json_path);
  json << "{\"n\": " << g.size() << ", \"params\": " << params_json << "}\n";
}

}  // namespace sgt
