#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgt/eval.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string dataset;
  std::string format = "csv";
  std::string method = "sgc";
  double beta = 1e-3;
  double lambda = 1e3;
  int knn_k = 7;
  double sigma = 0.0;  // <= 0 selects median pairwise distance
  int folds = 2;
  int train_folds = 1;
  bool unstratified = false;
  std::vector<double> noise_levels = {0.0, 0.1, 0.2, 0.3, 0.4};
  std::vector<double> proportions = {0.1, 0.2, 0.5};
  std::vector<double> beta_grid = {1e-4, 1e-3, 1e-2, 1e-1};
  std::vector<double> lambda_grid = {1e-1, 1e0, 1e1, 1e2, 1e3, 1e4, 1e5};
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string out = ".";
  // synth parameters
  int classes = 3;
  int per_class = 30;
  int dim = 10;
  double separation = 8.0;
  double blob_sigma = 1.0;
};

bool log_enabled() {
  const char* v = std::getenv("SGT_LOG");
  return v != nullptr && *v != '\0';
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "[sgt] " << msg << '\n';
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ordered_json doc = ordered_json::parse(in);
  for (auto& [key, value] : doc.items()) {
    if (key == "dataset") cfg.dataset = value.get<std::string>();
    else if (key == "format") cfg.format = value.get<std::string>();
    else if (key == "method") cfg.method = value.get<std::string>();
    else if (key == "beta") cfg.beta = value.get<double>();
    else if (key == "lambda") cfg.lambda = value.get<double>();
    else if (key == "knn_k") cfg.knn_k = value.get<int>();
    else if (key == "sigma") cfg.sigma = value.get<double>();
    else if (key == "folds") cfg.folds = value.get<int>();
    else if (key == "train_folds") cfg.train_folds = value.get<int>();
    else if (key == "unstratified") cfg.unstratified = value.get<bool>();
    else if (key == "noise_levels") cfg.noise_levels = value.get<std::vector<double>>();
    else if (key == "proportions") cfg.proportions = value.get<std::vector<double>>();
    else if (key == "beta_grid") cfg.beta_grid = value.get<std::vector<double>>();
    else if (key == "lambda_grid") cfg.lambda_grid = value.get<std::vector<double>>();
    else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
    else if (key == "jobs") cfg.jobs = value.get<int>();
    else if (key == "out") cfg.out = value.get<std::string>();
    else if (key == "classes") cfg.classes = value.get<int>();
    else if (key == "per_class") cfg.per_class = value.get<int>();
    else if (key == "dim") cfg.dim = value.get<int>();
    else if (key == "separation") cfg.separation = value.get<double>();
    else if (key == "blob_sigma") cfg.blob_sigma = value.get<double>();
    else throw std::runtime_error("unknown config key: " + key);
  }
}

sgt::LassoConfig lasso_config(const RunConfig& cfg) {
  sgt::LassoConfig c;
  c.beta = cfg.beta;
  c.validate();  // reject bad values here so they surface as usage errors
  return c;
}

sgt::TransductionConfig transduction_config(const RunConfig& cfg) {
  sgt::TransductionConfig c;
  c.lambda = cfg.lambda;
  c.validate();
  return c;
}

sgt::CvSpec cv_spec(const RunConfig& cfg) {
  sgt::CvSpec spec;
  spec.folds = cfg.folds;
  spec.train_fold_count = cfg.train_folds;
  spec.seed = cfg.seed;
  spec.stratified = !cfg.unstratified;
  return spec;
}

sgt::FeatureDataset load_input(const RunConfig& cfg) {
  if (cfg.dataset.empty()) throw std::invalid_argument("--dataset is required");
  if (!fs::exists(cfg.dataset))
    throw std::invalid_argument("dataset file does not exist: " + cfg.dataset);
  return sgt::load_dataset(cfg.dataset, sgt::parse_format(cfg.format));
}

std::vector<sgt::Method> selected_methods(const RunConfig& cfg) {
  std::vector<sgt::Method> methods;
  std::stringstream ss(cfg.method);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name == "sgc")
      methods.push_back(sgt::make_sgc_method(lasso_config(cfg), transduction_config(cfg)));
    else if (name == "gc")
      methods.push_back(sgt::make_gc_method(cfg.knn_k, cfg.sigma, transduction_config(cfg)));
    else if (name == "src")
      methods.push_back(sgt::make_src_method(lasso_config(cfg)));
    else
      throw std::invalid_argument("unknown method: " + name);
  }
  if (methods.empty()) throw std::invalid_argument("no method selected");
  return methods;
}

std::string config_snapshot(const RunConfig& cfg, const std::string& command) {
  ordered_json j;
  j["command"] = command;
  j["dataset"] = cfg.dataset;
  j["format"] = cfg.format;
  j["method"] = cfg.method;
  j["beta"] = cfg.beta;
  j["lambda"] = cfg.lambda;
  j["knn_k"] = cfg.knn_k;
  j["sigma"] = cfg.sigma;
  j["folds"] = cfg.folds;
  j["train_folds"] = cfg.train_folds;
  j["stratified"] = !cfg.unstratified;
  j["noise_levels"] = cfg.noise_levels;
  j["proportions"] = cfg.proportions;
  j["beta_grid"] = cfg.beta_grid;
  j["lambda_grid"] = cfg.lambda_grid;
  j["seed"] = cfg.seed;
  return j.dump();
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out);
  return fs::path(cfg.out) / name;
}

int run_classify(const RunConfig& cfg) {
  const sgt::FeatureDataset raw = load_input(cfg);
  const sgt::FeatureDataset ds = sgt::normalize_columns(raw);
  log_line("classify: n=" + std::to_string(ds.size()) + " method=" + cfg.method);

  std::vector<int> pred;
  std::vector<double> score(ds.size(), 0.0);
  if (cfg.method == "sgc" || cfg.method == "gc") {
    const sgt::AffinityGraph g =
        cfg.method == "sgc"
            ? sgt::build_sparse_graph(ds, lasso_config(cfg))
            : sgt::build_knn_heat_graph(
                  ds, cfg.knn_k,
                  cfg.sigma > 0.0 ? cfg.sigma : sgt::median_pairwise_distance(ds));
    sgt::ScoreMatrix F;
    pred = sgt::transduce_on_graph(ds, g, transduction_config(cfg), &F);
    for (int i = 0; i < ds.size(); ++i) score[i] = F.values(i, pred[i]);
  } else if (cfg.method == "src") {
    const sgt::SrcModel model = sgt::make_src_model(ds, lasso_config(cfg));
    pred.resize(ds.size());
    for (int i = 0; i < ds.size(); ++i) {
      const sgt::SrcResult r = sgt::src_classify(model, ds.features.col(i));
      pred[i] = r.label;
      score[i] = r.residuals(r.label);
    }
  } else {
    throw std::invalid_argument("unknown method: " + cfg.method);
  }

  const fs::path csv = out_path(cfg, "predictions.csv");
  std::ofstream out(csv);
  if (!out) throw std::runtime_error("cannot write " + csv.string());
  out.precision(17);
  out << "sample_index,true_label,predicted_label,max_score\n";
  for (int i = 0; i < ds.size(); ++i) {
    out << i << ',';
    if (ds.labeled[i]) out << ds.original_labels[ds.labels[i]];
    out << ',' << ds.original_labels[pred[i]] << ',' << score[i] << '\n';
  }

  ordered_json summary;
  summary["config"] = ordered_json::parse(config_snapshot(cfg, "classify"));
  summary["samples"] = ds.size();
  summary["features"] = ds.dim();
  summary["classes"] = ds.class_count;
  summary["labeled"] = ds.labeled_count();
  summary["unlabeled"] = ds.unlabeled_count();
  std::ofstream js(out_path(cfg, "summary.json"));
  js << summary.dump(2) << '\n';
  return 0;
}

int run_sweep(const RunConfig& cfg, const std::string& command) {
  const sgt::FeatureDataset ds = load_input(cfg);
  const std::vector<sgt::Method> methods = selected_methods(cfg);
  std::vector<sgt::ExperimentResult> results;
  std::string stem;

  if (command == "cv") {
    for (const auto& m : methods) results.push_back(cross_validate(ds, cv_spec(cfg), m));
    stem = "cv_results";
  } else if (command == "noise-sweep") {
    results = sgt::noise_sweep(ds, cfg.noise_levels, cv_spec(cfg), methods);
    stem = "noise_results";
  } else if (command == "size-sweep") {
    results = sgt::size_sweep(ds, cfg.proportions, methods, cfg.seed, !cfg.unstratified);
    stem = "size_results";
  } else {  // param-sweep
    results = sgt::param_sweep(ds, cfg.beta_grid, cfg.lambda_grid, cv_spec(cfg),
                               lasso_config(cfg), transduction_config(cfg));
    stem = "param_results";
  }

  sgt::write_results_csv(out_path(cfg, stem + ".csv").string(), results);
  sgt::write_results_json(out_path(cfg, stem + ".json").string(), results,
                          config_snapshot(cfg, command));
  log_line(command + ": wrote " + std::to_string(results.size()) + " results");
  return 0;
}

int run_synth(const RunConfig& cfg) {
  if (cfg.dataset.empty())
    throw std::invalid_argument("--dataset is required as the output path");
  const sgt::FeatureDataset ds =
      sgt::make_blobs(cfg.classes, cfg.per_class, cfg.dim, cfg.separation,
                      cfg.blob_sigma, cfg.seed);
  sgt::save_dataset(ds, cfg.dataset, sgt::parse_format(cfg.format));
  log_line("synth: wrote " + cfg.dataset);
  return 0;
}

int run_graph(const RunConfig& cfg) {
  const sgt::FeatureDataset ds = sgt::normalize_columns(load_input(cfg));
  sgt::AffinityGraph g;
  std::string params;
  if (cfg.method == "gc") {
    const double s = cfg.sigma > 0.0 ? cfg.sigma : sgt::median_pairwise_distance(ds);
    g = sgt::build_knn_heat_graph(ds, cfg.knn_k, s);
    ordered_json p{{"method", "gc"}, {"k", cfg.knn_k}, {"sigma", s}};
    params = p.dump();
  } else {
    g = sgt::build_sparse_graph(ds, lasso_config(cfg));
    ordered_json p{{"method", "sgc"}, {"beta", cfg.beta}};
    params = p.dump();
  }
  sgt::export_graph(g, out_path(cfg, "graph.csv").string(),
                    out_path(cfg, "graph.json").string(), params);
  return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file (flags override it)");
  cmd->add_option("--dataset", cfg.dataset, "dataset file path");
  cmd->add_option("--format", cfg.format, "dataset format: csv|binary");
  cmd->add_option("--method", cfg.method, "sgc|src|gc (comma-separated for sweeps)");
  cmd->add_option("--beta", cfg.beta, "lasso sparsity trade-off in (0,1)");
  cmd->add_option("--lambda", cfg.lambda, "transduction fit weight > 0");
  cmd->add_option("--knn-k", cfg.knn_k, "kNN graph neighbor count");
  cmd->add_option("--sigma", cfg.sigma, "heat kernel bandwidth (<=0: median distance)");
  cmd->add_option("--folds", cfg.folds, "cross-validation fold count");
  cmd->add_option("--train-folds", cfg.train_folds, "folds used as the labeled set");
  cmd->add_flag("--unstratified", cfg.unstratified, "disable stratified folds");
  cmd->add_option("--noise-levels", cfg.noise_levels, "salt-and-pepper proportions");
  cmd->add_option("--proportions", cfg.proportions, "training proportions");
  cmd->add_option("--beta-grid", cfg.beta_grid, "beta values for param-sweep");
  cmd->add_option("--lambda-grid", cfg.lambda_grid, "lambda values for param-sweep");
  cmd->add_option("--seed", cfg.seed, "root random seed");
  cmd->add_option("--jobs", cfg.jobs, "worker thread count (0 = default)");
  cmd->add_option("--out", cfg.out, "output directory");
  cmd->add_option("--classes", cfg.classes, "synth: cluster count");
  cmd->add_option("--per-class", cfg.per_class, "synth: samples per cluster");
  cmd->add_option("--dim", cfg.dim, "synth: feature dimension");
  cmd->add_option("--separation", cfg.separation, "synth: min center distance");
  cmd->add_option("--blob-sigma", cfg.blob_sigma, "synth: cluster spread");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse graph-based transductive classification toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  const std::vector<std::string> commands = {"classify",   "cv",         "noise-sweep",
                                             "size-sweep", "param-sweep", "synth",
                                             "graph"};
  for (const auto& name : commands)
    add_common_options(app.add_subcommand(name), cfg, config_path);

  // config-file values sit between built-in defaults and CLI flags, so the
  // file is applied first and argv is re-parsed on top of it
  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      RunConfig layered;
      apply_config_file(layered, config_path);
      cfg = layered;
      app.clear();
      app.parse(argc, argv);
    }
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "classify") return run_classify(cfg);
    if (command == "synth") return run_synth(cfg);
    if (command == "graph") return run_graph(cfg);
    return run_sweep(cfg, command);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
