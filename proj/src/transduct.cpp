#include "sgt/transduct.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace sgt {

void TransductionConfig::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("transduction lambda must be > 0");
  if (!(cg_tol > 0.0)) throw std::invalid_argument("cg_tol must be > 0");
  if (cg_max_iters < 1) throw std::invalid_argument("cg_max_iters must be >= 1");
}

LabelMatrix build_label_matrix(const FeatureDataset& ds) {
  ds.validate();
  if (ds.labeled_count() == 0)
    throw std::invalid_argument("label matrix needs at least one labeled sample");
  LabelMatrix Y;
  Y.values = Matrix::Zero(ds.size(), ds.class_count);
  for (int i = 0; i < ds.size(); ++i) {
    if (!ds.labeled[i]) continue;
    Y.values.row(i).setConstant(-1.0);
    Y.values(i, ds.labels[i]) = 1.0;
  }
  return Y;
}

namespace {

// Plain CG on the SPD system A z = b, A = L + lambda I applied on the fly.
// Converges on the max-abs residual so the contract bound is direct.
bool conjugate_gradient(const Matrix& L, double lambda, const Vector& b,
                        Vector& z, double tol, int max_iters) {
  z = Vector::Zero(b.size());
  Vector r = b;
  Vector p = r;
  double rr = r.squaredNorm();
  for (int it = 0; it < max_iters; ++it) {
    if (r.lpNorm<Eigen::Infinity>() <= tol) return true;
    const Vector Ap = L * p + lambda * p;
    const double alpha = rr / p.dot(Ap);
    z += alpha * p;
    r -= alpha * Ap;
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  return r.lpNorm<Eigen::Infinity>() <= tol;
}

}  // namespace

ScoreMatrix solve_transduction(const GraphLaplacian& L, const LabelMatrix& Y,
                               const TransductionConfig& cfg) {
  cfg.validate();
  const int n = L.size();
  if (Y.samples() != n)
    throw std::invalid_argument("label matrix rows must match Laplacian size");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(L.laplacian, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-6)
    throw std::invalid_argument("Laplacian is not positive semi-definite");

  SolverKind kind = cfg.solver;
  if (kind == SolverKind::auto_select)
    kind = n <= cfg.direct_size_limit ? SolverKind::direct
                                      : SolverKind::conjugate_gradient;

  ScoreMatrix F;
  if (kind == SolverKind::direct) {
    Matrix system = L.laplacian;
    system.diagonal().array() += cfg.lambda;
    Eigen::LLT<Matrix> llt(system);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("transduction system factorization failed");
    F.values = llt.solve(cfg.lambda * Y.values);
    return F;
  }

  F.values.resize(n, Y.classes());
  F.converged = true;
  for (int k = 0; k < Y.classes(); ++k) {
    Vector column;
    const bool ok = conjugate_gradient(L.laplacian, cfg.lambda,
                                       cfg.lambda * Y.values.col(k), column,
                                       cfg.cg_tol, cfg.cg_max_iters);
    F.converged = F.converged && ok;
    F.values.col(k) = column;
  }
  return F;
}

std::vector<int> predict(const ScoreMatrix& F) {
  if (!F.values.allFinite())
    throw std::invalid_argument("score matrix must be finite");
  std::vector<int> labels(F.values.rows());
  for (int i = 0; i < F.values.rows(); ++i) {
    int best = 0;
    for (int j = 1; j < F.values.cols(); ++j)
      if (F.values(i, j) > F.values(i, best)) best = j;
    labels[i] = best;
  }
  return labels;
}

std::vector<int> transduce_on_graph(const FeatureDataset& ds, const AffinityGraph& g,
                                    const TransductionConfig& t_cfg,
                                    ScoreMatrix* scores_out) {
  const GraphLaplacian lap = normalized_laplacian(g);
  const LabelMatrix Y = build_label_matrix(ds);
  ScoreMatrix F;
  try {
    F = solve_transduction(lap, Y, t_cfg);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("transduction stage failed: ") + e.what());
  }
  if (scores_out) *scores_out = F;
  return predict(F);
}

std::vector<int> sgc_classify(const FeatureDataset& ds, const LassoConfig& lasso_cfg,
                              const TransductionConfig& t_cfg) {
  AffinityGraph g;
  try {
    g = build_sparse_graph(ds, lasso_cfg);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("graph stage failed: ") + e.what());
  }
  return transduce_on_graph(ds, g, t_cfg);
}

}  // namespace sgt
