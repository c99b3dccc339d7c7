#pragma once

#include <vector>

#include "sgt/graph.hpp"

namespace sgt {

/// n x c label matrix Y. Labeled rows have +1 at the sample's class and -1
/// elsewhere; unlabeled rows are all zero.
struct LabelMatrix {
  Matrix values;

  int samples() const { return static_cast<int>(values.rows()); }
  int classes() const { return static_cast<int>(values.cols()); }
};

struct ScoreMatrix {
  Matrix values;  // n x c classification functions F = [f_1 ... f_c]
  bool converged = true;
};

enum class SolverKind { auto_select, direct, conjugate_gradient };

struct TransductionConfig {
  double lambda = 1e3;     // fit-vs-smoothness trade-off, > 0
  SolverKind solver = SolverKind::auto_select;
  double cg_tol = 1e-10;
  int cg_max_iters = 10000;
  int direct_size_limit = 2000;  // auto_select switches to CG above this

  void validate() const;
};

LabelMatrix build_label_matrix(const FeatureDataset& ds);

/// Closed-form transduction: solves (L + lambda I) F = lambda Y, which is
/// the stationarity condition of  F' L F + lambda ||F - Y||^2.  The system
/// is SPD; the direct path factorizes once and solves all c columns.
ScoreMatrix solve_transduction(const GraphLaplacian& L, const LabelMatrix& Y,
                               const TransductionConfig& cfg);

/// Row argmax of F; ties go to the smallest class index.
std::vector<int> predict(const ScoreMatrix& F);

/// Full SGC pipeline: sparse graph -> normalized Laplacian -> label matrix
/// -> transduction -> argmax. Returns predictions for all n samples.
std::vector<int> sgc_classify(const FeatureDataset& ds, const LassoConfig& lasso_cfg,
                              const TransductionConfig& t_cfg);

/// Transduction over a pre-built graph; shared tail of sgc/gc pipelines.
std::vector<int> transduce_on_graph(const FeatureDataset& ds, const AffinityGraph& g,
                                    const TransductionConfig& t_cfg,
                                    ScoreMatrix* scores_out = nullptr);

}  // namespace sgt
