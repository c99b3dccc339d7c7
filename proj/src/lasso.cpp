#include "sgt/lasso.hpp"

#include <cmath>
#include <stdexcept>

namespace sgt {

void LassoConfig::validate() const {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("lasso beta must be strictly inside (0, 1)");
  if (max_iters < 1) throw std::invalid_argument("lasso max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("lasso tol must be > 0");
}

double soft_threshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

double lasso_objective(const Matrix& dictionary, const Vector& query,
                       const Vector& coefs, double beta) {
  const double residual = (query - dictionary * coefs).squaredNorm();
  return (1.0 - beta) * residual + beta * coefs.lpNorm<1>();
}

SparseCoefVector solve_lasso(const Matrix& dictionary, const Vector& query,
                             const LassoConfig& cfg) {
  cfg.validate();
  const int m = static_cast<int>(dictionary.cols());
  if (m < 1) throw std::invalid_argument("lasso dictionary must have >= 1 column");
  if (dictionary.rows() != query.size())
    throw std::invalid_argument("lasso dictionary/query dimension mismatch");
  if (!dictionary.allFinite() || !query.allFinite())
    throw std::invalid_argument("lasso inputs must be finite");

  SparseCoefVector result;
  result.values = Vector::Zero(m);
  result.dictionary_indices.resize(m);
  for (int j = 0; j < m; ++j) result.dictionary_indices[j] = j;

  Vector col_sq(m);
  for (int j = 0; j < m; ++j) col_sq(j) = dictionary.col(j).squaredNorm();

  const double beta = cfg.beta;
  Vector residual = query;  // r = x - D c, maintained incrementally
  Vector& c = result.values;

  // KKT stationarity residual of Eq-form objective at the current iterate;
  // checked only once the sweep delta is below tol.
  auto kkt_gap = [&]() {
    double gap = 0.0;
    const Vector corr = 2.0 * (1.0 - beta) * (dictionary.transpose() * residual);
    for (int j = 0; j < m; ++j) {
      if (c(j) != 0.0)
        gap = std::max(gap, std::abs(corr(j) - beta * (c(j) > 0 ? 1.0 : -1.0)));
      else
        gap = std::max(gap, std::max(0.0, std::abs(corr(j)) - beta));
    }
    return gap;
  };

  result.converged = false;
  for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
    double max_delta = 0.0;
    for (int j = 0; j < m; ++j) {
      if (col_sq(j) == 0.0) continue;  // zero-norm atom keeps coefficient 0
      const double old = c(j);
      const double corr = dictionary.col(j).dot(residual) + col_sq(j) * old;
      const double threshold = beta / (2.0 * (1.0 - beta) * col_sq(j));
      const double updated = soft_threshold(corr / col_sq(j), threshold);
      if (updated != old) {
        residual += dictionary.col(j) * (old - updated);
        c(j) = updated;
        max_delta = std::max(max_delta, std::abs(updated - old));
      }
    }
    result.sweeps = sweep + 1;
    if (max_delta <= cfg.tol && kkt_gap() <= 5.0 * cfg.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace sgt
