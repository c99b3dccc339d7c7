#include "sgt/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sgt/rng.hpp"

namespace sgt {

namespace {

std::string format_param(double beta, double lambda) {
  std::ostringstream os;
  os << "beta=" << beta << ";lambda=" << lambda;
  return os.str();
}

}  // namespace

Method make_sgc_method(const LassoConfig& lasso_cfg, const TransductionConfig& t_cfg) {
  return {"sgc", [lasso_cfg, t_cfg](const FeatureDataset& ds) {
            return sgc_classify(normalize_columns(ds), lasso_cfg, t_cfg);
          }};
}

Method make_gc_method(int k, double sigma, const TransductionConfig& t_cfg) {
  return {"gc", [k, sigma, t_cfg](const FeatureDataset& ds) {
            const FeatureDataset norm = normalize_columns(ds);
            const double s = sigma > 0.0 ? sigma : median_pairwise_distance(norm);
            return gc_classify(norm, k, s, t_cfg);
          }};
}

Method make_src_method(const LassoConfig& lasso_cfg) {
  return {"src", [lasso_cfg](const FeatureDataset& ds) {
            return src_classify_all(normalize_columns(ds), lasso_cfg);
          }};
}

void CvSpec::validate() const {
  if (folds < 2) throw std::invalid_argument("cv folds must be >= 2");
  if (train_fold_count < 1 || train_fold_count >= folds)
    throw std::invalid_argument("cv needs 1 <= train_fold_count < folds");
}

std::vector<int> make_folds(const FeatureDataset& ds, const CvSpec& spec) {
  spec.validate();
  const int n = ds.size();
  std::vector<int> fold(n, 0);
  auto rng = make_rng(spec.seed, 0x666f6c64ULL);  // "fold" stream

  if (!spec.stratified) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int t = 0; t < n; ++t) fold[order[t]] = t % spec.folds;
    return fold;
  }

  for (int c = 0; c < ds.class_count; ++c) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (ds.labels[i] == c) members.push_back(i);
    if (static_cast<int>(members.size()) < spec.folds)
      throw std::invalid_argument("class " + std::to_string(c) + " has " +
                                  std::to_string(members.size()) +
                                  " samples, fewer than " +
                                  std::to_string(spec.folds) + " folds");
    std::shuffle(members.begin(), members.end(), rng);
    for (size_t t = 0; t < members.size(); ++t)
      fold[members[t]] = static_cast<int>(t) % spec.folds;
  }
  return fold;
}

ExperimentResult cross_validate(const FeatureDataset& ds, const CvSpec& spec,
                                const Method& method) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<int> fold = make_folds(ds, spec);

  ExperimentResult result;
  result.method = method.name;
  for (int rotation = 0; rotation < spec.folds; ++rotation) {
    FeatureDataset masked = ds;
    int unlabeled_total = 0;
    for (int i = 0; i < ds.size(); ++i) {
      const int offset = (fold[i] - rotation + spec.folds) % spec.folds;
      const bool is_labeled = offset < spec.train_fold_count;
      masked.labeled[i] = is_labeled;
      if (!is_labeled) {
        masked.labels[i] = kUnlabeled;
        ++unlabeled_total;
      }
    }
    if (unlabeled_total == 0)
      throw std::invalid_argument("cv rotation left no unlabeled samples");

    const std::vector<int> pred = method.classify(masked);
    int errors = 0;
    for (int i = 0; i < ds.size(); ++i)
      if (!masked.labeled[i] && pred[i] != ds.labels[i]) ++errors;
    result.per_fold_error.push_back(100.0 * errors / unlabeled_total);
  }

  const int k = static_cast<int>(result.per_fold_error.size());
  result.mean = std::accumulate(result.per_fold_error.begin(),
                                result.per_fold_error.end(), 0.0) / k;
  double ss = 0.0;
  for (double e : result.per_fold_error) ss += (e - result.mean) * (e - result.mean);
  result.std_dev = k > 1 ? std::sqrt(ss / (k - 1)) : 0.0;
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::vector<ExperimentResult> noise_sweep(const FeatureDataset& ds,
                                          const std::vector<double>& levels,
                                          const CvSpec& spec,
                                          const std::vector<Method>& methods) {
  std::vector<ExperimentResult> grid;
  for (const Method& method : methods) {
    for (double level : levels) {
      NoiseSpec noise;
      noise.proportion = level;
      noise.seed = mix_seed(spec.seed, 0x6e6f697365ULL);  // "noise" stream
      const FeatureDataset noisy = inject_salt_pepper(ds, noise);
      ExperimentResult r = cross_validate(noisy, spec, method);
      r.level = level;
      grid.push_back(std::move(r));
    }
  }
  return grid;
}

std::vector<ExperimentResult> size_sweep(const FeatureDataset& ds,
                                         const std::vector<double>& proportions,
                                         const std::vector<Method>& methods,
                                         std::uint64_t seed, bool stratified) {
  std::vector<ExperimentResult> grid;
  for (const Method& method : methods) {
    for (double p : proportions) {
      if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("training proportion must be in (0, 1)");
      CvSpec spec;
      spec.folds = std::max(2, static_cast<int>(std::lround(1.0 / p)));
      spec.train_fold_count = 1;
      spec.seed = seed;
      spec.stratified = stratified;
      ExperimentResult r = cross_validate(ds, spec, method);
      r.level = p;
      grid.push_back(std::move(r));
    }
  }
  return grid;
}

std::vector<ExperimentResult> param_sweep(const FeatureDataset& ds,
                                          const std::vector<double>& beta_grid,
                                          const std::vector<double>& lambda_grid,
                                          const CvSpec& spec,
                                          const LassoConfig& lasso_base,
                                          const TransductionConfig& t_base) {
  std::vector<ExperimentResult> grid;
  for (double beta : beta_grid) {
    for (double lambda : lambda_grid) {
      LassoConfig lasso = lasso_base;
      lasso.beta = beta;
      TransductionConfig t_cfg = t_base;
      t_cfg.lambda = lambda;
      ExperimentResult r = cross_validate(ds, spec, make_sgc_method(lasso, t_cfg));
      r.param = format_param(beta, lambda);
      grid.push_back(std::move(r));
    }
  }
  return grid;
}

void write_results_csv(const std::string& path,
                       const std::vector<ExperimentResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write results file: " + path);
  out.precision(17);
  out << "method,param,level,mean,std\n";
  for (const auto& r : results)
    out << r.method << ',' << r.param << ',' << r.level << ',' << r.mean << ','
        << r.std_dev << '\n';
}

void write_results_json(const std::string& path,
                        const std::vector<ExperimentResult>& results,
                        const std::string& config_json) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::parse(config_json);
  doc["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json item;
    item["method"] = r.method;
    item["param"] = r.param;
    item["level"] = r.level;
    item["per_fold_error"] = r.per_fold_error;
    item["mean"] = r.mean;
    item["std"] = r.std_dev;
    doc["results"].push_back(std::move(item));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write results file: " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace sgt
