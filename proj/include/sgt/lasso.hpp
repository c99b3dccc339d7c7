#pragma once

#include <vector>

#include "sgt/dataset.hpp"

namespace sgt {

struct LassoConfig {
  double beta = 1e-3;      // sparsity trade-off, strictly inside (0, 1)
  int max_iters = 10000;   // coordinate-descent sweeps
  double tol = 1e-7;       // max absolute coefficient change per sweep

  void validate() const;
};

struct SparseCoefVector {
  Vector values;                        // length m
  std::vector<int> dictionary_indices;  // position -> original sample index
  bool converged = true;
  int sweeps = 0;
};

/// Cyclic coordinate descent on
///   (1 - beta) * ||x - D c||^2 + beta * ||c||_1.
/// Per-coordinate update is the soft threshold
///   c_j <- S_{beta / (2 (1-beta) ||a_j||^2)} ( a_j' r_(-j) / ||a_j||^2 ).
/// Zero-norm columns get coefficient 0. On hitting max_iters the best
/// iterate is returned with converged=false.
SparseCoefVector solve_lasso(const Matrix& dictionary, const Vector& query,
                             const LassoConfig& cfg);

/// (1 - beta) * ||x - D c||^2 + beta * ||c||_1, no extra factors.
double lasso_objective(const Matrix& dictionary, const Vector& query,
                       const Vector& coefs, double beta);

double soft_threshold(double value, double threshold);

}  // namespace sgt
