// Copyright 2026 The FROT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frot/distances.hpp"
#include "frot/emd.hpp"
#include "frot/experiments.hpp"
#include "frot/feature_select.hpp"
#include "frot/frot.hpp"
#include "frot/io.hpp"
#include "frot/measures.hpp"
#include "frot/sinkhorn.hpp"
#include "frot/synth.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitValidation = 2;

std::string json_key(std::string name) {
  for (char& c : name)
    if (c == '-') c = '_';
  return name;
}

// Binds each option to both a command-line flag and a JSON config key, so a
// --config file can override any flag and the effective values can be
// written back to the manifest.
class Options {
 public:
  explicit Options(CLI::App* app) : app_(app) {}

  template <typename T>
  CLI::Option* add(const std::string& name, T& var, const std::string& desc) {
    const std::string key = json_key(name);
    setters_[key] = [&var, key](const json& j) {
      try {
        var = j.get<T>();
      } catch (const json::exception& e) {
        throw frot::ValidationError("config key '" + key + "': " + e.what());
      }
    };
    getters_[key] = [&var] { return json(var); };
    return app_->add_option("--" + name, var, desc)->capture_default_str();
  }

  CLI::Option* flag(const std::string& name, bool& var,
                    const std::string& desc) {
    const std::string key = json_key(name);
    setters_[key] = [&var, key](const json& j) {
      if (!j.is_boolean())
        throw frot::ValidationError("config key '" + key + "' must be boolean");
      var = j.get<bool>();
    };
    getters_[key] = [&var] { return json(var); };
    return app_->add_flag("--" + name + ",!--no-" + name, var, desc);
  }

  void apply_config(const json& cfg) {
    for (const auto& [key, value] : cfg.items()) {
      if (key == "schema_version") {
        if (!value.is_number_integer() ||
            value.get<int>() != frot::io::kSchemaVersion)
          throw frot::ValidationError("config: unsupported schema_version");
        continue;
      }
      const auto it = setters_.find(json_key(key));
      if (it == setters_.end())
        throw frot::ValidationError("config: unknown key '" + key + "'");
      it->second(value);
    }
  }

  json effective() const {
    json out = json::object();
    for (const auto& [key, get] : getters_) out[key] = get();
    return out;
  }

 private:
  CLI::App* app_;
  std::map<std::string, std::function<void(const json&)>> setters_;
  std::map<std::string, std::function<json()>> getters_;
};

struct Common {
  double eta = 1.0;
  double epsilon = 0.02;
  int iters = 10;
  std::uint64_t seed = 0;
  std::string out = "frot-output";
  std::string config;
};

void add_common(Options& o, CLI::App* app, Common& c, bool with_eta = true,
                bool with_epsilon = true, bool with_iters = true) {
  if (with_eta) o.add("eta", c.eta, "Group-weight regularizer eta");
  if (with_epsilon) o.add("epsilon", c.epsilon, "Entropic regularizer epsilon");
  if (with_iters) o.add("iters", c.iters, "Iteration count");
  o.add("seed", c.seed, "RNG seed");
  o.add("out", c.out, "Output directory");
  app->add_option("--config", c.config,
                  "JSON file whose keys override flags (a manifest.json is "
                  "accepted and its config is used)");
}

json load_config(const std::string& path) {
  json cfg;
  try {
    cfg = json::parse(frot::io::read_file(path));
  } catch (const json::exception& e) {
    throw frot::ValidationError("config " + path + ": " + e.what());
  }
  if (!cfg.is_object())
    throw frot::ValidationError("config " + path + " must be a JSON object");
  // A manifest replays its recorded configuration into the new --out.
  if (cfg.contains("config") && cfg.contains("command")) {
    json inner = cfg["config"];
    if (inner.is_object()) inner.erase("out");
    return inner;
  }
  return cfg;
}

struct Run {
  std::string command;
  Options* options = nullptr;
  Common* common = nullptr;
  std::vector<std::string> outputs;
  std::vector<std::string> notes;
  std::chrono::steady_clock::time_point start;

  fs::path out_dir() const { return common->out; }

  void write(const std::string& rel, const std::string& content) {
    frot::io::write_file_atomic(out_dir() / rel, content);
    outputs.push_back(rel);
  }

  void write_result(json result) {
    result["schema_version"] = frot::io::kSchemaVersion;
    result["command"] = command;
    if (!notes.empty()) result["notes"] = notes;
    write("result.json", result.dump(2) + "\n");
  }

  void finish() {
    frot::io::Manifest m;
    m.command = command;
    m.config_json = options->effective().dump();
    m.seed = common->seed;
    m.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    m.outputs = outputs;
    m.notes = notes;
    frot::io::write_manifest(out_dir(), m);
  }
};

json vec_json(const frot::Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

// Shared by the solver subcommands that read a measure pair.
struct PairArgs {
  std::string source;
  std::string target;
  std::string cost = "squared_euclidean";
  std::string cost_matrix;

  void add(Options& o, bool allow_matrix) {
    o.add("source", source, "Source measure (CSV or .json)")->required();
    o.add("target", target, "Target measure (CSV or .json)")->required();
    o.add("cost", cost,
          "Per-group cost: squared_euclidean, euclidean, l1, cosine_normalized");
    if (allow_matrix)
      o.add("cost-matrix", cost_matrix,
            "Dense cost CSV replacing --cost (single-group problems)");
  }
};

frot::Matrix pair_cost(const PairArgs& p, const frot::GroupedMeasure& src,
                       const frot::GroupedMeasure& dst) {
  if (!p.cost_matrix.empty()) {
    frot::Matrix c = frot::io::parse_matrix_csv(frot::io::read_file(p.cost_matrix));
    if (c.rows() != src.weights().size() || c.cols() != dst.weights().size())
      throw frot::ValidationError("cost matrix shape does not match measures");
    return frot::GroupedCost::from_matrices({c}).total();
  }
  return frot::build_grouped_cost(src, dst, frot::parse_cost_kind(p.cost))
      .total();
}

std::optional<bool> parse_log_domain(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s == "on") return true;
  if (s == "off") return false;
  throw frot::ValidationError("--log-domain must be auto, on or off");
}

frot::Subsolver parse_subsolver(const std::string& name, double epsilon,
                                int sinkhorn_iters) {
  if (name == "emd" || name == "exact_emd") return frot::Subsolver::exact();
  if (name == "sinkhorn") {
    auto s = frot::Subsolver::entropic(epsilon);
    s.sinkhorn.t_max = sinkhorn_iters;
    return s;
  }
  throw frot::ValidationError("--subsolver must be emd or sinkhorn");
}

void run_sinkhorn(Run& run, const PairArgs& p, const std::string& log_domain,
                  double tol) {
  const auto src = frot::io::read_measure(p.source);
  const auto dst = frot::io::read_measure(p.target);
  const auto cost = pair_cost(p, src, dst);
  frot::SinkhornConfig cfg;
  cfg.epsilon = run.common->epsilon;
  cfg.t_max = run.common->iters;
  cfg.tol = tol;
  cfg.log_domain = parse_log_domain(log_domain);
  const auto r = frot::sinkhorn_solve(src.weights(), dst.weights(), cost, cfg);
  if (!r.converged)
    run.notes.push_back("sinkhorn stopped at the iteration cap");
  run.write("plan.csv", frot::io::matrix_to_csv(r.plan.matrix));
  run.write_result({{"objective", r.objective},
                    {"transport_cost", r.transport_cost},
                    {"entropy", r.entropy},
                    {"iterations", r.iterations},
                    {"converged", r.converged},
                    {"log_domain", r.log_domain},
                    {"marginal_residual", r.plan.marginal_residual},
                    {"f", vec_json(r.f)},
                    {"g", vec_json(r.g)},
                    {"plan_file", "plan.csv"}});
}

void run_emd(Run& run, const PairArgs& p) {
  const auto src = frot::io::read_measure(p.source);
  const auto dst = frot::io::read_measure(p.target);
  const auto cost = pair_cost(p, src, dst);
  const auto r = frot::emd_exact_solve(src.weights(), dst.weights(), cost);
  run.write("plan.csv", frot::io::matrix_to_csv(r.plan.matrix));
  run.write_result({{"objective", r.objective},
                    {"pivots", r.pivots},
                    {"degenerate_pivots", r.degenerate_pivots},
                    {"marginal_residual", r.plan.marginal_residual},
                    {"u", vec_json(r.u)},
                    {"v", vec_json(r.v)},
                    {"plan_file", "plan.csv"}});
}

void run_frot(Run& run, const PairArgs& p, const std::string& method,
              const std::string& subsolver, int sinkhorn_iters,
              const std::string& init) {
  const auto src = frot::io::read_measure(p.source);
  const auto dst = frot::io::read_measure(p.target);
  if (!src.same_group_structure(dst))
    throw frot::ValidationError("source and target group structures differ");
  const auto costs =
      frot::build_grouped_cost(src, dst, frot::parse_cost_kind(p.cost));
  json result;
  if (method == "lp") {
    const auto r = frot::frot_lp_solve(costs, src.weights(), dst.weights());
    run.write("plan.csv", frot::io::matrix_to_csv(r.plan.matrix));
    result = {{"method", "lp"},
              {"objective", r.objective},
              {"alpha", vec_json(r.alpha)},
              {"iterations", r.iterations},
              {"marginal_residual", r.plan.marginal_residual}};
  } else if (method == "fw") {
    frot::FrotConfig cfg;
    cfg.eta = run.common->eta;
    cfg.fw_iters = run.common->iters;
    cfg.subsolver =
        parse_subsolver(subsolver, run.common->epsilon, sinkhorn_iters);
    if (init == "uniform")
      cfg.init_plan = frot::InitPlan::uniform;
    else if (init != "product")
      throw frot::ValidationError("--init must be product or uniform");
    const auto s = frot::frot_fw_solve(src, dst, costs, cfg);
    run.write("plan.csv", frot::io::matrix_to_csv(s.plan.matrix));
    json alpha_trace = json::array();
    for (const auto& a : s.alpha_trace) alpha_trace.push_back(vec_json(a));
    result = {{"method", "fw"},
              {"objective", s.objective_trace.back()},
              {"max_objective",
               frot::group_inner_products(s.plan.matrix, costs).maxCoeff()},
              {"alpha", vec_json(s.alpha)},
              {"objective_trace", s.objective_trace},
              {"alpha_trace", alpha_trace},
              {"fw_gap_trace", s.fw_gap_trace},
              {"iterations", s.iterations},
              {"stopped_early", s.stopped_early},
              {"subsolver", std::string(frot::to_string(s.subsolver_used))},
              {"marginal_residual", s.plan.marginal_residual},
              {"max_subproblem_residual", s.max_subproblem_residual},
              {"unconverged_subproblems", s.unconverged_subproblems}};
    if (s.unconverged_subproblems > 0)
      run.notes.push_back(
          "some Sinkhorn subproblems stopped at the iteration cap and were "
          "rounded onto the transport polytope");
  } else {
    throw frot::ValidationError("--method must be fw or lp");
  }
  result["plan_file"] = "plan.csv";
  run.write_result(result);
}

void run_frwd(Run& run, const PairArgs& p, double order,
              const std::string& ground,
              const std::vector<double>& eta_schedule,
              const std::string& subsolver, int sinkhorn_iters) {
  const auto src = frot::io::read_measure(p.source);
  const auto dst = frot::io::read_measure(p.target);
  frot::FrwdOptions opts;
  opts.eta_schedule = eta_schedule;
  opts.fw_iters = run.common->iters;
  opts.subsolver =
      parse_subsolver(subsolver, run.common->epsilon, sinkhorn_iters);
  const auto r = frot::frwd_distance(src, dst, frot::parse_ground_distance(ground),
                                     order, opts);
  run.write("plan.csv", frot::io::matrix_to_csv(r.plan.matrix));
  run.write_result({{"value", r.value},
                    {"order", r.order},
                    {"ground", ground},
                    {"path", eta_schedule.empty() ? "lp" : "fw"},
                    {"alpha", vec_json(r.alpha)},
                    {"marginal_residual", r.plan.marginal_residual},
                    {"plan_file", "plan.csv"}});
}

void run_synth(Run& run, std::size_t n, std::size_t m, bool noise_free,
               std::size_t noise_dims, bool labeled, std::size_t dims,
               std::size_t informative, double shift, const std::string& fmt) {
  if (fmt != "csv" && fmt != "json")
    throw frot::ValidationError("--format must be csv or json");
  if (labeled) {
    frot::LabeledSynthOptions lo;
    lo.samples_per_class = n;
    lo.dims = dims;
    lo.informative = informative;
    lo.shift = shift;
    lo.seed = run.common->seed;
    const auto data = frot::synth_labeled(lo);
    run.write("labeled.csv", frot::io::labeled_to_csv(data));
    run.write_result({{"samples", data.labels.size()},
                      {"dims", dims},
                      {"informative", data.informative},
                      {"data_file", "labeled.csv"}});
    return;
  }
  frot::SynthOptions so;
  so.n = n;
  so.m = m;
  so.seed = run.common->seed;
  so.noise_free = noise_free;
  so.noise_dims = noise_dims;
  const auto data = frot::synth_generate(so);
  run.notes = data.notes;
  const std::string ext = fmt == "json" ? ".json" : ".csv";
  auto emit = [&](const frot::GroupedMeasure& meas) {
    return fmt == "json" ? frot::io::measure_to_json(meas)
                         : frot::io::measure_to_csv(meas);
  };
  run.write("source" + ext, emit(data.src));
  run.write("target" + ext, emit(data.dst));
  json cov = json::array();
  for (Eigen::Index i = 0; i < data.covariance.rows(); ++i)
    cov.push_back(std::vector<double>(
        {data.covariance(i, 0), data.covariance(i, 1)}));
  run.write_result({{"covariance", cov},
                    {"group_widths", data.src.group_widths()},
                    {"source_file", "source" + ext},
                    {"target_file", "target" + ext}});
}

frot::ExperimentSpec experiment_spec(const Common& c,
                                     const std::string& scenario) {
  frot::ExperimentSpec spec;
  spec.seed = c.seed;
  spec.scenario = frot::parse_scenario(scenario);
  spec.eta = c.eta;
  spec.epsilon = c.epsilon;
  spec.fw_iters = c.iters;
  spec.output_dir = c.out;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feature-robust optimal transport solvers and experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(frot::io::library_version()));

  // sinkhorn
  Common c_sk;
  c_sk.iters = 1000;
  c_sk.epsilon = 0.1;
  auto* sk = app.add_subcommand("sinkhorn", "Entropic OT between two measures");
  Options o_sk(sk);
  PairArgs p_sk;
  p_sk.add(o_sk, true);
  std::string sk_log = "auto";
  double sk_tol = 1e-9;
  add_common(o_sk, sk, c_sk, false);
  o_sk.add("log-domain", sk_log, "auto, on or off");
  o_sk.add("tol", sk_tol, "L1 marginal residual tolerance");

  // emd
  Common c_emd;
  auto* emd = app.add_subcommand("emd", "Exact OT by network simplex");
  Options o_emd(emd);
  PairArgs p_emd;
  p_emd.add(o_emd, true);
  add_common(o_emd, emd, c_emd, false, false, false);

  // frot
  Common c_fr;
  auto* fr = app.add_subcommand("frot", "Feature-robust OT");
  Options o_fr(fr);
  PairArgs p_fr;
  p_fr.add(o_fr, false);
  std::string fr_method = "fw";
  std::string fr_sub = "sinkhorn";
  std::string fr_init = "product";
  int fr_sk_iters = 1000;
  add_common(o_fr, fr, c_fr);
  o_fr.add("method", fr_method, "fw (Frank-Wolfe) or lp (exact epigraph LP)");
  o_fr.add("subsolver", fr_sub, "emd or sinkhorn");
  o_fr.add("init", fr_init, "product or uniform initial plan");
  o_fr.add("sinkhorn-iters", fr_sk_iters, "Sinkhorn iteration cap");

  // frwd
  Common c_fw;
  c_fw.iters = 200;
  auto* fw = app.add_subcommand("frwd", "Feature-robust Wasserstein distance");
  Options o_fw(fw);
  PairArgs p_fw;
  o_fw.add("source", p_fw.source, "Source measure")->required();
  o_fw.add("target", p_fw.target, "Target measure")->required();
  double fw_p = 1.0;
  std::string fw_ground = "euclidean";
  std::vector<double> fw_schedule;
  std::string fw_sub = "emd";
  int fw_sk_iters = 1000;
  add_common(o_fw, fw, c_fw, false);
  o_fw.add("p", fw_p, "Order p >= 1");
  o_fw.add("ground", fw_ground, "euclidean or l1");
  o_fw.add("eta-schedule", fw_schedule,
           "Frank-Wolfe eta schedule; empty solves the exact LP")
      ->delimiter(',');
  o_fw.add("subsolver", fw_sub, "emd or sinkhorn (Frank-Wolfe path)");
  o_fw.add("sinkhorn-iters", fw_sk_iters, "Sinkhorn iteration cap");

  // select-features
  Common c_sf;
  auto* sf = app.add_subcommand("select-features",
                                "Rank features by FROT and baselines");
  Options o_sf(sf);
  std::string sf_data;
  int sf_label = -1;
  std::size_t sf_k = 2;
  double sf_frac = 0.75;
  bool sf_std = true;
  std::string sf_method = "frot";
  int sf_sk_iters = 1000;
  add_common(o_sf, sf, c_sf);
  o_sf.add("data", sf_data, "Labeled CSV (header row, two classes)")->required();
  o_sf.add("label-column", sf_label, "Label column index, negative from end");
  o_sf.add("top-k", sf_k, "Number of features to keep");
  o_sf.add("train-fraction", sf_frac, "Training share of the split");
  o_sf.flag("standardize", sf_std, "Standardize with train statistics");
  o_sf.add("method", sf_method,
           "Ranking for the reduced data: frot, wasserstein_sort, "
           "linear_correlation");
  o_sf.add("sinkhorn-iters", sf_sk_iters, "Sinkhorn iteration cap");

  // synth
  Common c_sy;
  auto* sy = app.add_subcommand("synth", "Generate synthetic data");
  Options o_sy(sy);
  std::size_t sy_n = 50, sy_m = 50, sy_noise = 8, sy_dims = 20, sy_inf = 2;
  bool sy_clean = false, sy_labeled = false;
  double sy_shift = 1.0;
  std::string sy_fmt = "csv";
  add_common(o_sy, sy, c_sy, false, false, false);
  o_sy.add("n", sy_n, "Source samples (labeled: samples per class)");
  o_sy.add("m", sy_m, "Target samples");
  o_sy.add("noise-dims", sy_noise, "Noise coordinates");
  o_sy.flag("noise-free", sy_clean, "Emit only the informative coordinates");
  o_sy.flag("labeled", sy_labeled, "Emit a two-class labeled dataset");
  o_sy.add("dims", sy_dims, "Labeled: feature count");
  o_sy.add("informative", sy_inf, "Labeled: informative feature count");
  o_sy.add("shift", sy_shift, "Labeled: class mean offset");
  o_sy.add("format", sy_fmt, "csv or json");

  // experiment
  Common c_ex;
  auto* ex = app.add_subcommand("experiment", "Run a reproduction scenario");
  Options o_ex(ex);
  std::string ex_scenario = "fig1_noise";
  frot::ExperimentSpec ex_defaults;
  std::vector<double> ex_eta_grid = ex_defaults.eta_grid;
  std::vector<double> ex_eps_grid = ex_defaults.epsilon_grid;
  std::size_t ex_n = 0, ex_m = 0, ex_trials = 1;
  int ex_sk_iters = ex_defaults.sinkhorn_iters;
  double ex_f3_eps = ex_defaults.fig3_sinkhorn_epsilon;
  int ex_f3_iters = ex_defaults.fig3_fw_iters;
  std::string ex_f3_cost(frot::to_string(ex_defaults.fig3_cost));
  std::string ex_data;
  int ex_label = -1;
  std::size_t ex_dims = ex_defaults.dims, ex_inf = ex_defaults.informative;
  double ex_shift = ex_defaults.shift;
  std::size_t ex_k = ex_defaults.top_k;
  double ex_frac = ex_defaults.train_fraction;
  bool ex_std = true;
  std::string ex_method = "frot";
  add_common(o_ex, ex, c_ex);
  o_ex.add("scenario", ex_scenario,
           "fig1_noise, fig3_solver_compare or feature_selection");
  o_ex.add("eta-grid", ex_eta_grid, "fig3 eta sweep")->delimiter(',');
  o_ex.add("epsilon-grid", ex_eps_grid, "fig3 epsilon sweep")->delimiter(',');
  o_ex.add("n", ex_n, "Source size (0: scenario default)");
  o_ex.add("m", ex_m, "Target size (0: scenario default)");
  o_ex.add("trials", ex_trials, "Trials; trial k uses seed + k");
  o_ex.add("sinkhorn-iters", ex_sk_iters, "Sinkhorn iteration cap");
  o_ex.add("fig3-sinkhorn-epsilon", ex_f3_eps, "fig3 FW-Sinkhorn epsilon");
  o_ex.add("fig3-fw-iters", ex_f3_iters, "fig3 Frank-Wolfe iterations");
  o_ex.add("fig3-cost", ex_f3_cost, "fig3 per-group cost");
  o_ex.add("data", ex_data, "feature_selection: labeled CSV (empty: synthetic)");
  o_ex.add("label-column", ex_label, "feature_selection: label column");
  o_ex.add("dims", ex_dims, "feature_selection: synthetic feature count");
  o_ex.add("informative", ex_inf, "feature_selection: informative features");
  o_ex.add("shift", ex_shift, "feature_selection: class mean offset");
  o_ex.add("top-k", ex_k, "feature_selection: features kept");
  o_ex.add("train-fraction", ex_frac, "feature_selection: training share");
  o_ex.flag("standardize", ex_std, "feature_selection: standardize");
  o_ex.add("method", ex_method, "feature_selection: ranking for reduced data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  struct Entry {
    CLI::App* app;
    Options* options;
    Common* common;
  };
  const std::vector<Entry> entries{{sk, &o_sk, &c_sk},   {emd, &o_emd, &c_emd},
                                   {fr, &o_fr, &c_fr},   {fw, &o_fw, &c_fw},
                                   {sf, &o_sf, &c_sf},   {sy, &o_sy, &c_sy},
                                   {ex, &o_ex, &c_ex}};
  try {
    Run run;
    run.start = std::chrono::steady_clock::now();
    for (const auto& e : entries) {
      if (!e.app->parsed()) continue;
      run.command = e.app->get_name();
      run.options = e.options;
      run.common = e.common;
      if (!e.common->config.empty())
        e.options->apply_config(load_config(e.common->config));
    }
    if (run.command.empty()) throw frot::ValidationError("no subcommand");
    if (run.common->out.empty())
      throw frot::ValidationError("--out must not be empty");

    if (sk->parsed()) {
      run_sinkhorn(run, p_sk, sk_log, sk_tol);
    } else if (emd->parsed()) {
      run_emd(run, p_emd);
    } else if (fr->parsed()) {
      run_frot(run, p_fr, fr_method, fr_sub, fr_sk_iters, fr_init);
    } else if (fw->parsed()) {
      run_frwd(run, p_fw, fw_p, fw_ground, fw_schedule, fw_sub, fw_sk_iters);
    } else if (sy->parsed()) {
      run_synth(run, sy_n, sy_m, sy_clean, sy_noise, sy_labeled, sy_dims,
                sy_inf, sy_shift, sy_fmt);
    } else {
      const bool select = sf->parsed();
      const Common& c = select ? c_sf : c_ex;
      frot::ExperimentSpec spec = experiment_spec(
          c, select ? std::string("feature_selection") : ex_scenario);
      if (select) {
        spec.data_path = sf_data;
        spec.label_column = sf_label;
        spec.top_k = sf_k;
        spec.train_fraction = sf_frac;
        spec.standardize = sf_std;
        spec.selection_method = frot::parse_ranking_method(sf_method);
        spec.sinkhorn_iters = sf_sk_iters;
      } else {
        spec.eta_grid = ex_eta_grid;
        spec.epsilon_grid = ex_eps_grid;
        spec.n = ex_n;
        spec.m = ex_m;
        spec.trials = ex_trials;
        spec.sinkhorn_iters = ex_sk_iters;
        spec.fig3_sinkhorn_epsilon = ex_f3_eps;
        spec.fig3_fw_iters = ex_f3_iters;
        spec.fig3_cost = frot::parse_cost_kind(ex_f3_cost);
        spec.data_path = ex_data;
        spec.label_column = ex_label;
        spec.dims = ex_dims;
        spec.informative = ex_inf;
        spec.shift = ex_shift;
        spec.top_k = ex_k;
        spec.train_fraction = ex_frac;
        spec.standardize = ex_std;
        spec.selection_method = frot::parse_ranking_method(ex_method);
      }
      const frot::ExperimentRun r = frot::run_experiment(spec);
      run.outputs = r.outputs;
      run.notes = r.notes;
    }
    run.finish();
    std::cout << (run.out_dir() / "result.json").string() << "\n";
    return kExitOk;
  } catch (const frot::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const frot::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}
