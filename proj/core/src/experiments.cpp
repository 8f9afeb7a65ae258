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

#include "frot/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frot/emd.hpp"
#include "frot/io.hpp"
#include "json.hpp"

namespace frot {

using nlohmann::json;

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::fig1_noise: return "fig1_noise";
    case Scenario::fig3_solver_compare: return "fig3_solver_compare";
    case Scenario::feature_selection: return "feature_selection";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  if (name == "fig1_noise" || name == "fig1") return Scenario::fig1_noise;
  if (name == "fig3_solver_compare" || name == "fig3")
    return Scenario::fig3_solver_compare;
  if (name == "feature_selection") return Scenario::feature_selection;
  throw ValidationError("unknown scenario '" + std::string(name) + "'");
}

void ExperimentSpec::validate() const {
  if (eta_grid.empty()) throw ValidationError("eta grid is empty");
  if (epsilon_grid.empty()) throw ValidationError("epsilon grid is empty");
  for (double e : eta_grid)
    if (!(e > 0.0) || !std::isfinite(e))
      throw ValidationError("eta grid values must be positive");
  for (double e : epsilon_grid)
    if (!(e > 0.0) || !std::isfinite(e))
      throw ValidationError("epsilon grid values must be positive");
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw ValidationError("eta must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ValidationError("epsilon must be positive");
  if (!(fig3_sinkhorn_epsilon > 0.0))
    throw ValidationError("fig3 sinkhorn epsilon must be positive");
  if (sinkhorn_iters < 1)
    throw ValidationError("sinkhorn_iters must be >= 1");
  if (fw_iters < 1 || fig3_fw_iters < 1)
    throw ValidationError("Frank-Wolfe iteration counts must be >= 1");
  if (trials == 0) throw ValidationError("trials must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ValidationError("train_fraction must lie in (0, 1)");
  if (top_k == 0) throw ValidationError("top_k must be >= 1");
  if (scenario == Scenario::feature_selection && data_path.empty()) {
    if (dims == 0) throw ValidationError("dims must be >= 1");
    if (informative > dims)
      throw ValidationError("more informative dims than dims");
    if (top_k > dims) throw ValidationError("top_k exceeds dims");
  }
}

std::size_t ExperimentSpec::resolved_n() const {
  if (n != 0) return n;
  return scenario == Scenario::fig3_solver_compare ? 20 : 50;
}

std::size_t ExperimentSpec::resolved_m() const {
  if (m != 0) return m;
  return scenario == Scenario::fig3_solver_compare ? 20 : 50;
}

namespace {

json vec_json(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json sinkhorn_summary(const SinkhornResult& r) {
  return {{"iterations", r.iterations},
          {"converged", r.converged},
          {"log_domain", r.log_domain},
          {"transport_cost", r.transport_cost},
          {"objective", r.objective},
          {"marginal_residual", r.plan.marginal_residual}};
}

json frot_summary(const FrotSolution& s) {
  json alpha_trace = json::array();
  for (const auto& a : s.alpha_trace) alpha_trace.push_back(vec_json(a));
  return {{"alpha", vec_json(s.alpha)},
          {"objective_trace", s.objective_trace},
          {"alpha_trace", alpha_trace},
          {"fw_gap_trace", s.fw_gap_trace},
          {"iterations", s.iterations},
          {"subsolver", std::string(to_string(s.subsolver_used))},
          {"marginal_residual", s.plan.marginal_residual},
          {"max_subproblem_residual", s.max_subproblem_residual},
          {"unconverged_subproblems", s.unconverged_subproblems}};
}

double mass_on_support(const Matrix& plan, const Matrix& reference) {
  double mass = 0.0;
  for (Eigen::Index i = 0; i < plan.rows(); ++i)
    for (Eigen::Index j = 0; j < plan.cols(); ++j)
      if (reference(i, j) > 0.0) mass += plan(i, j);
  return mass;
}

std::filesystem::path trial_dir(const ExperimentSpec& spec, std::size_t k) {
  if (spec.trials == 1) return {};
  return "trial_" + std::to_string(k);
}

class Writer {
 public:
  explicit Writer(const std::filesystem::path& root) : root_(root) {}
  bool enabled() const { return !root_.empty(); }
  void write(const std::filesystem::path& rel, const std::string& content) {
    if (!enabled()) return;
    io::write_file_atomic(root_ / rel, content);
    outputs_.push_back(rel.generic_string());
  }
  std::vector<std::string> take() { return std::move(outputs_); }

 private:
  std::filesystem::path root_;
  std::vector<std::string> outputs_;
};

std::vector<std::string> fig1_notes() {
  return {"listed covariance [[5,4],[1,1]] is not symmetric; its "
          "symmetrization is not PSD, so samples use the nearest PSD matrix "
          "(eigenvalues clipped at 0)",
          "costs are squared Euclidean per group; OT baselines use the summed "
          "cost over all coordinates",
          "Sinkhorn plans that stop at the iteration cap are rounded onto the "
          "transport polytope before use; raw residuals are reported"};
}

}  // namespace

Fig1Result run_fig1(const ExperimentSpec& spec) {
  spec.validate();
  Fig1Result out;
  out.notes = fig1_notes();
  double sum_alpha = 0.0;
  out.min_alpha_informative = 1.0;
  for (std::size_t k = 0; k < spec.trials; ++k) {
    Fig1Trial trial;
    trial.seed = spec.seed + k;
    SynthOptions so;
    so.n = spec.resolved_n();
    so.m = spec.resolved_m();
    so.seed = trial.seed;
    so.noise_free = true;
    const SynthData clean = synth_generate(so);
    so.noise_free = false;
    const SynthData noisy = synth_generate(so);

    const Vector& a = noisy.src.weights();
    const Vector& b = noisy.dst.weights();
    const Matrix c_clean = pairwise_cost(clean.src.points(), clean.dst.points(),
                                         CostKind::squared_euclidean);
    const GroupedCost costs =
        build_grouped_cost(noisy.src, noisy.dst, CostKind::squared_euclidean);

    SinkhornConfig sc;
    sc.epsilon = spec.epsilon;
    sc.t_max = spec.sinkhorn_iters;
    auto feasible = [&](const SinkhornResult& r) {
      return r.converged ? r.plan.matrix
                         : round_to_transport_polytope(r.plan.matrix, a, b);
    };
    trial.ot_clean = sinkhorn_solve(clean.src.weights(), clean.dst.weights(),
                                    c_clean, sc);
    trial.ot_clean_plan = feasible(trial.ot_clean);
    trial.ot_noisy = sinkhorn_solve(a, b, costs.total(), sc);
    trial.ot_noisy_plan = feasible(trial.ot_noisy);

    FrotConfig fc;
    fc.eta = spec.eta;
    fc.fw_iters = spec.fw_iters;
    fc.subsolver = Subsolver::entropic(spec.epsilon);
    fc.subsolver.sinkhorn.t_max = spec.sinkhorn_iters;
    trial.frot_noisy = frot_fw_solve(noisy.src, noisy.dst, costs, fc);
    trial.alpha_informative = trial.frot_noisy.alpha[0];

    const EmdResult ref =
        emd_exact_solve(clean.src.weights(), clean.dst.weights(), c_clean);
    trial.clean_emd = ref.objective;
    const Matrix& frot_plan = trial.frot_noisy.plan.matrix;
    trial.clean_reference_mass_ot_clean =
        mass_on_support(trial.ot_clean_plan, ref.plan.matrix);
    trial.clean_reference_mass_ot_noisy =
        mass_on_support(trial.ot_noisy_plan, ref.plan.matrix);
    trial.clean_reference_mass_frot = mass_on_support(frot_plan, ref.plan.matrix);
    trial.clean_cost_ratio_ot_clean =
        frobenius_inner(trial.ot_clean_plan, c_clean) / ref.objective;
    trial.clean_cost_ratio_ot_noisy =
        frobenius_inner(trial.ot_noisy_plan, c_clean) / ref.objective;
    trial.clean_cost_ratio_frot = frobenius_inner(frot_plan, c_clean) / ref.objective;

    sum_alpha += trial.alpha_informative;
    out.min_alpha_informative =
        std::min(out.min_alpha_informative, trial.alpha_informative);
    out.trials.push_back(std::move(trial));
  }
  out.mean_alpha_informative = sum_alpha / static_cast<double>(spec.trials);
  return out;
}

double plan_mse(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("plan_mse: shape mismatch");
  return (a - b).squaredNorm() / static_cast<double>(a.size());
}

GroupedCost fig3_instance(const ExperimentSpec& spec, Vector* a, Vector* b) {
  SynthOptions so;
  so.n = spec.resolved_n();
  so.m = spec.resolved_m();
  so.seed = spec.seed;
  const SynthData data = synth_generate(so);
  if (a) *a = data.src.weights();
  if (b) *b = data.dst.weights();
  return build_grouped_cost(data.src, data.dst, spec.fig3_cost);
}

Fig3Result run_fig3(const ExperimentSpec& spec) {
  spec.validate();
  Fig3Result out;
  out.notes = fig1_notes();
  out.notes.pop_back();
  out.notes.push_back("per-group cost: " + std::string(to_string(spec.fig3_cost)));
  Vector a, b;
  const GroupedCost costs = fig3_instance(spec, &a, &b);
  out.lp = frot_lp_solve(costs, a, b);
  const Matrix& lp_plan = out.lp.plan.matrix;

  auto max_objective = [&](const Matrix& plan) {
    return group_inner_products(plan, costs).maxCoeff();
  };

  for (double eta : spec.eta_grid) {
    Fig3EtaRow row;
    row.eta = eta;
    row.lp_objective = out.lp.objective;
    row.lp_smoothed = smoothed_max_objective(lp_plan, costs, eta);

    FrotConfig fc;
    fc.eta = eta;
    fc.fw_iters = spec.fig3_fw_iters;
    fc.subsolver = Subsolver::exact();
    const FrotSolution emd = frot_fw_solve(a, b, costs, fc);
    row.fw_emd_objective = max_objective(emd.plan.matrix);
    row.fw_emd_smoothed = emd.objective_trace.back();
    row.mse_fw_emd = plan_mse(emd.plan.matrix, lp_plan);

    fc.subsolver = Subsolver::entropic(spec.fig3_sinkhorn_epsilon);
    fc.subsolver.sinkhorn.t_max = spec.sinkhorn_iters;
    const FrotSolution snk = frot_fw_solve(a, b, costs, fc);
    row.fw_sinkhorn_objective = max_objective(snk.plan.matrix);
    row.fw_sinkhorn_smoothed = snk.objective_trace.back();
    row.mse_fw_sinkhorn = plan_mse(snk.plan.matrix, lp_plan);
    out.eta_rows.push_back(row);
  }

  for (double eps : spec.epsilon_grid) {
    Fig3EpsRow row;
    row.epsilon = eps;
    FrotConfig fc;
    fc.eta = spec.eta;
    fc.fw_iters = spec.fig3_fw_iters;
    fc.subsolver = Subsolver::entropic(eps);
    fc.subsolver.sinkhorn.t_max = spec.sinkhorn_iters;
    const FrotSolution snk = frot_fw_solve(a, b, costs, fc);
    row.fw_sinkhorn_objective = max_objective(snk.plan.matrix);
    row.fw_sinkhorn_smoothed = snk.objective_trace.back();
    row.mse_fw_sinkhorn = plan_mse(snk.plan.matrix, lp_plan);
    row.max_subproblem_residual = snk.max_subproblem_residual;
    row.unconverged_subproblems = snk.unconverged_subproblems;
    out.eps_rows.push_back(row);
  }
  return out;
}

namespace {

bool contains_all(const std::vector<std::size_t>& top,
                  const std::vector<std::size_t>& wanted) {
  if (wanted.empty()) return false;
  for (std::size_t w : wanted)
    if (std::find(top.begin(), top.end(), w) == top.end()) return false;
  return true;
}

}  // namespace

FeatureSelectionResult run_feature_selection(const ExperimentSpec& spec) {
  spec.validate();
  FeatureSelectionResult out;
  out.synthetic = spec.data_path.empty();
  LabeledData loaded;
  if (!out.synthetic) {
    loaded = io::read_labeled_csv(spec.data_path, spec.label_column);
    if (spec.top_k > static_cast<std::size_t>(loaded.features.cols()))
      throw ValidationError("top_k exceeds the number of features");
  }

  std::size_t frot_hits = 0, w_hits = 0, c_hits = 0;
  for (std::size_t k = 0; k < spec.trials; ++k) {
    FeatureTrial trial;
    trial.seed = spec.seed + k;
    LabeledData data;
    if (out.synthetic) {
      LabeledSynthOptions lo;
      lo.samples_per_class = spec.resolved_n();
      lo.dims = spec.dims;
      lo.informative = spec.informative;
      lo.shift = spec.shift;
      lo.seed = trial.seed;
      data = synth_labeled(lo);
    } else {
      data = loaded;
    }
    if (out.columns.empty()) out.columns = data.columns;

    Rng split_rng = Rng::for_stream(trial.seed, "feature/split");
    const Split split = train_test_split(data.labels.size(),
                                         spec.train_fraction, split_rng);
    trial.train_rows = split.train.size();
    trial.test_rows = split.test.size();
    LabeledData train = subset_rows(data, split.train);
    if (spec.standardize)
      train.features = Standardizer::fit(train.features).apply(train.features);
    const Matrix class0 = train.rows_with_label(0);
    const Matrix class1 = train.rows_with_label(1);
    if (class0.rows() == 0 || class1.rows() == 0)
      throw ValidationError("training split lacks one of the two classes");

    FeatureImportanceConfig fc;
    fc.eta = spec.eta;
    fc.fw_iters = spec.fw_iters;
    fc.subsolver = Subsolver::entropic(spec.epsilon);
    fc.subsolver.sinkhorn.t_max = spec.sinkhorn_iters;
    fc.standardized = spec.standardize;
    trial.frot = frot_feature_importance(class0, class1, fc);
    trial.wasserstein =
        baseline_rank(class0, class1, RankingMethod::wasserstein_sort);
    trial.correlation =
        baseline_rank(class0, class1, RankingMethod::linear_correlation);

    if (out.synthetic) {
      trial.informative = data.informative;
      trial.frot_hit =
          contains_all(select_top_k(trial.frot, spec.top_k), data.informative);
      trial.wasserstein_hit = contains_all(
          select_top_k(trial.wasserstein, spec.top_k), data.informative);
      trial.correlation_hit = contains_all(
          select_top_k(trial.correlation, spec.top_k), data.informative);
      frot_hits += trial.frot_hit;
      w_hits += trial.wasserstein_hit;
      c_hits += trial.correlation_hit;
    }
    out.trials.push_back(std::move(trial));
  }
  const double t = static_cast<double>(spec.trials);
  out.frot_hit_rate = static_cast<double>(frot_hits) / t;
  out.wasserstein_hit_rate = static_cast<double>(w_hits) / t;
  out.correlation_hit_rate = static_cast<double>(c_hits) / t;
  if (spec.standardize)
    out.notes.push_back("features standardized with train-split statistics");
  return out;
}

std::string experiment_spec_to_json(const ExperimentSpec& spec) {
  json j = {{"seed", spec.seed},
            {"scenario", std::string(to_string(spec.scenario))},
            {"eta_grid", spec.eta_grid},
            {"epsilon_grid", spec.epsilon_grid},
            {"eta", spec.eta},
            {"epsilon", spec.epsilon},
            {"fw_iters", spec.fw_iters},
            {"sinkhorn_iters", spec.sinkhorn_iters},
            {"n", spec.resolved_n()},
            {"m", spec.resolved_m()},
            {"trials", spec.trials},
            {"output_dir", spec.output_dir.generic_string()},
            {"fig3_sinkhorn_epsilon", spec.fig3_sinkhorn_epsilon},
            {"fig3_fw_iters", spec.fig3_fw_iters},
            {"fig3_cost", std::string(to_string(spec.fig3_cost))},
            {"data_path", spec.data_path.generic_string()},
            {"label_column", spec.label_column},
            {"dims", spec.dims},
            {"informative", spec.informative},
            {"shift", spec.shift},
            {"top_k", spec.top_k},
            {"selection_method", std::string(to_string(spec.selection_method))},
            {"train_fraction", spec.train_fraction},
            {"standardize", spec.standardize}};
  return j.dump();
}

void apply_experiment_config(ExperimentSpec& spec,
                             const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "schema_version") {
        if (v.get<int>() != io::kSchemaVersion)
          throw ValidationError("config: unsupported schema_version");
      } else if (key == "seed") spec.seed = v.get<std::uint64_t>();
      else if (key == "scenario") spec.scenario = parse_scenario(v.get<std::string>());
      else if (key == "eta_grid") spec.eta_grid = v.get<std::vector<double>>();
      else if (key == "epsilon_grid") spec.epsilon_grid = v.get<std::vector<double>>();
      else if (key == "eta") spec.eta = v.get<double>();
      else if (key == "epsilon") spec.epsilon = v.get<double>();
      else if (key == "fw_iters" || key == "iters") spec.fw_iters = v.get<int>();
      else if (key == "sinkhorn_iters") spec.sinkhorn_iters = v.get<int>();
      else if (key == "n") spec.n = v.get<std::size_t>();
      else if (key == "m") spec.m = v.get<std::size_t>();
      else if (key == "trials") spec.trials = v.get<std::size_t>();
      else if (key == "output_dir" || key == "out") spec.output_dir = v.get<std::string>();
      else if (key == "fig3_sinkhorn_epsilon") spec.fig3_sinkhorn_epsilon = v.get<double>();
      else if (key == "fig3_fw_iters") spec.fig3_fw_iters = v.get<int>();
      else if (key == "fig3_cost") spec.fig3_cost = parse_cost_kind(v.get<std::string>());
      else if (key == "data_path" || key == "data") spec.data_path = v.get<std::string>();
      else if (key == "label_column") spec.label_column = v.get<int>();
      else if (key == "dims") spec.dims = v.get<std::size_t>();
      else if (key == "informative") spec.informative = v.get<std::size_t>();
      else if (key == "shift") spec.shift = v.get<double>();
      else if (key == "top_k") spec.top_k = v.get<std::size_t>();
      else if (key == "selection_method")
        spec.selection_method = parse_ranking_method(v.get<std::string>());
      else if (key == "train_fraction") spec.train_fraction = v.get<double>();
      else if (key == "standardize") spec.standardize = v.get<bool>();
      else throw ValidationError("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

namespace {

json fig1_json(const Fig1Result& r, const ExperimentSpec& spec, Writer& w) {
  json trials = json::array();
  for (std::size_t k = 0; k < r.trials.size(); ++k) {
    const auto& t = r.trials[k];
    const auto dir = trial_dir(spec, k);
    w.write(dir / "plan_ot_clean.csv", io::matrix_to_csv(t.ot_clean_plan));
    w.write(dir / "plan_ot_noisy.csv", io::matrix_to_csv(t.ot_noisy_plan));
    w.write(dir / "plan_frot_noisy.csv",
            io::matrix_to_csv(t.frot_noisy.plan.matrix));
    trials.push_back(
        {{"seed", t.seed},
         {"alpha_informative", t.alpha_informative},
         {"ot_clean", sinkhorn_summary(t.ot_clean)},
         {"ot_noisy", sinkhorn_summary(t.ot_noisy)},
         {"frot_noisy", frot_summary(t.frot_noisy)},
         {"clean_emd", t.clean_emd},
         {"clean_reference_mass",
          {{"ot_clean", t.clean_reference_mass_ot_clean},
           {"ot_noisy", t.clean_reference_mass_ot_noisy},
           {"frot_noisy", t.clean_reference_mass_frot}}},
         {"clean_cost_ratio",
          {{"ot_clean", t.clean_cost_ratio_ot_clean},
           {"ot_noisy", t.clean_cost_ratio_ot_noisy},
           {"frot_noisy", t.clean_cost_ratio_frot}}}});
  }
  return {{"trials", trials},
          {"min_alpha_informative", r.min_alpha_informative},
          {"mean_alpha_informative", r.mean_alpha_informative}};
}

json fig3_json(const Fig3Result& r, Writer& w) {
  std::ostringstream eta_csv;
  eta_csv << "eta,lp_objective,fw_emd_objective,fw_sinkhorn_objective,"
             "lp_smoothed,fw_emd_smoothed,fw_sinkhorn_smoothed,mse_fw_emd,"
             "mse_fw_sinkhorn\n";
  json eta_rows = json::array();
  for (const auto& row : r.eta_rows) {
    eta_csv << io::format_double(row.eta) << ','
            << io::format_double(row.lp_objective) << ','
            << io::format_double(row.fw_emd_objective) << ','
            << io::format_double(row.fw_sinkhorn_objective) << ','
            << io::format_double(row.lp_smoothed) << ','
            << io::format_double(row.fw_emd_smoothed) << ','
            << io::format_double(row.fw_sinkhorn_smoothed) << ','
            << io::format_double(row.mse_fw_emd) << ','
            << io::format_double(row.mse_fw_sinkhorn) << '\n';
    eta_rows.push_back({{"eta", row.eta},
                        {"lp_objective", row.lp_objective},
                        {"fw_emd_objective", row.fw_emd_objective},
                        {"fw_sinkhorn_objective", row.fw_sinkhorn_objective},
                        {"lp_smoothed", row.lp_smoothed},
                        {"fw_emd_smoothed", row.fw_emd_smoothed},
                        {"fw_sinkhorn_smoothed", row.fw_sinkhorn_smoothed},
                        {"mse_fw_emd", row.mse_fw_emd},
                        {"mse_fw_sinkhorn", row.mse_fw_sinkhorn}});
  }
  std::ostringstream eps_csv;
  eps_csv << "epsilon,fw_sinkhorn_objective,fw_sinkhorn_smoothed,"
             "mse_fw_sinkhorn,max_subproblem_residual,unconverged_subproblems\n";
  json eps_rows = json::array();
  for (const auto& row : r.eps_rows) {
    eps_csv << io::format_double(row.epsilon) << ','
            << io::format_double(row.fw_sinkhorn_objective) << ','
            << io::format_double(row.fw_sinkhorn_smoothed) << ','
            << io::format_double(row.mse_fw_sinkhorn) << ','
            << io::format_double(row.max_subproblem_residual) << ','
            << row.unconverged_subproblems << '\n';
    eps_rows.push_back({{"epsilon", row.epsilon},
                        {"fw_sinkhorn_objective", row.fw_sinkhorn_objective},
                        {"fw_sinkhorn_smoothed", row.fw_sinkhorn_smoothed},
                        {"mse_fw_sinkhorn", row.mse_fw_sinkhorn},
                        {"max_subproblem_residual", row.max_subproblem_residual},
                        {"unconverged_subproblems", row.unconverged_subproblems}});
  }
  w.write("fig3_eta.csv", eta_csv.str());
  w.write("fig3_epsilon.csv", eps_csv.str());
  w.write("plan_lp.csv", io::matrix_to_csv(r.lp.plan.matrix));
  return {{"lp",
           {{"objective", r.lp.objective},
            {"alpha", vec_json(r.lp.alpha)},
            {"iterations", r.lp.iterations},
            {"marginal_residual", r.lp.plan.marginal_residual}}},
          {"eta_sweep", eta_rows},
          {"epsilon_sweep", eps_rows}};
}

json ranking_json(const FeatureRanking& r) {
  return {{"method", std::string(to_string(r.method))},
          {"importances", vec_json(r.importances)},
          {"order", r.order}};
}

json feature_json(const FeatureSelectionResult& r, const ExperimentSpec& spec,
                  Writer& w) {
  json trials = json::array();
  LabeledData loaded;
  if (!r.synthetic && w.enabled())
    loaded = io::read_labeled_csv(spec.data_path, spec.label_column);
  for (std::size_t k = 0; k < r.trials.size(); ++k) {
    const auto& t = r.trials[k];
    json tj = {{"seed", t.seed},
               {"train_rows", t.train_rows},
               {"test_rows", t.test_rows},
               {"frot", ranking_json(t.frot)},
               {"wasserstein_sort", ranking_json(t.wasserstein)},
               {"linear_correlation", ranking_json(t.correlation)}};
    if (r.synthetic) {
      tj["informative"] = t.informative;
      tj["frot_hit"] = t.frot_hit;
      tj["wasserstein_hit"] = t.wasserstein_hit;
      tj["correlation_hit"] = t.correlation_hit;
    }
    trials.push_back(std::move(tj));

    if (!w.enabled()) continue;
    LabeledData data;
    if (r.synthetic) {
      LabeledSynthOptions lo;
      lo.samples_per_class = spec.resolved_n();
      lo.dims = spec.dims;
      lo.informative = spec.informative;
      lo.shift = spec.shift;
      lo.seed = t.seed;
      data = synth_labeled(lo);
    } else {
      data = loaded;
    }
    Rng split_rng = Rng::for_stream(t.seed, "feature/split");
    const Split split = train_test_split(data.labels.size(),
                                         spec.train_fraction, split_rng);
    const FeatureRanking& chosen =
        spec.selection_method == RankingMethod::frot          ? t.frot
        : spec.selection_method == RankingMethod::wasserstein_sort ? t.wasserstein
                                                              : t.correlation;
    const auto top = select_top_k(chosen, spec.top_k);
    const auto dir = trial_dir(spec, k);
    w.write(dir / "train_selected.csv",
            io::labeled_to_csv(subset_columns(subset_rows(data, split.train), top)));
    w.write(dir / "test_selected.csv",
            io::labeled_to_csv(subset_columns(subset_rows(data, split.test), top)));
  }
  json out = {{"columns", r.columns},
              {"synthetic", r.synthetic},
              {"top_k", spec.top_k},
              {"selection_method", std::string(to_string(spec.selection_method))},
              {"trials", trials}};
  if (r.synthetic) {
    out["frot_hit_rate"] = r.frot_hit_rate;
    out["wasserstein_hit_rate"] = r.wasserstein_hit_rate;
    out["correlation_hit_rate"] = r.correlation_hit_rate;
  }
  return out;
}

}  // namespace

ExperimentRun run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  Writer w(spec.output_dir);
  ExperimentRun run;
  json result;
  result["schema_version"] = io::kSchemaVersion;
  result["scenario"] = std::string(to_string(spec.scenario));
  result["seed"] = spec.seed;
  switch (spec.scenario) {
    case Scenario::fig1_noise: {
      const Fig1Result r = run_fig1(spec);
      result["result"] = fig1_json(r, spec, w);
      run.notes = r.notes;
      break;
    }
    case Scenario::fig3_solver_compare: {
      const Fig3Result r = run_fig3(spec);
      result["result"] = fig3_json(r, w);
      run.notes = r.notes;
      break;
    }
    case Scenario::feature_selection: {
      const FeatureSelectionResult r = run_feature_selection(spec);
      result["result"] = feature_json(r, spec, w);
      run.notes = r.notes;
      break;
    }
  }
  result["notes"] = run.notes;
  run.result_json = result.dump(2) + "\n";
  w.write("result.json", run.result_json);
  run.outputs = w.take();
  return run;
}

}  // namespace frot
