#pragma once

#include <string>

#include "sgt/dataset.hpp"
#include "sgt/lasso.hpp"

namespace sgt {

/// Symmetric nonnegative affinity matrix. For sparse graphs the diagonal
/// holds the self-similarity w_ii = sum_{t != i} w_it.
struct AffinityGraph {
  Matrix weights;  // n x n, W = W'

  int size() const { return static_cast<int>(weights.rows()); }
  void validate() const;
};

struct GraphLaplacian {
  Matrix laplacian;  // symmetric PSD, spectrum in [0, 2]
  Vector degrees;    // D_ii = sum_j w_ij

  int size() const { return static_cast<int>(laplacian.rows()); }
};

/// Sparse affinity graph: every sample is coded against all others, edge
/// weights are w_ij = (|c_i(j)| + |c_j(i)|) / 2, diagonal is the row sum of
/// off-diagonal weights. The n per-query solves run in parallel; the result
/// is identical to build_sparse_graph_serial.
AffinityGraph build_sparse_graph(const FeatureDataset& ds, const LassoConfig& cfg);

/// Single-threaded reference used by tests and the benchmark target.
AffinityGraph build_sparse_graph_serial(const FeatureDataset& ds,
                                        const LassoConfig& cfg);

/// Heat-kernel kNN baseline graph, symmetrized by neighborhood union:
/// w_ij = exp(-||x_i - x_j||^2 / (2 sigma^2)) when either sample is among
/// the other's k nearest neighbors. Diagonal set like the sparse graph.
AffinityGraph build_knn_heat_graph(const FeatureDataset& ds, int k, double sigma);

/// L = I - D^{-1/2} W D^{-1/2} with D_ii = sum_j w_ij (diagonal included
/// unless degree_excludes_diagonal). Zero-degree rows use 0^{-1/2} := 0 so
/// isolated vertices get L_ii = 1. Symmetrized as (L + L') / 2.
GraphLaplacian normalized_laplacian(const AffinityGraph& g,
                                    bool degree_excludes_diagonal = false);

double median_pairwise_distance(const FeatureDataset& ds);

/// CSV of (i, j, w_ij) triples for j >= i plus a JSON sidecar with n and the
/// construction parameters.
void export_graph(const AffinityGraph& g, const std::string& csv_path,
                  const std::string& json_path, const std::string& params_json);

}  // namespace sgt
