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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "frot/feature_select.hpp"
#include "frot/frot.hpp"
#include "frot/measures.hpp"
#include "frot/sinkhorn.hpp"
#include "frot/synth.hpp"

namespace frot {

enum class Scenario { fig1_noise, fig3_solver_compare, feature_selection };
std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view name);

struct ExperimentSpec {
  std::uint64_t seed = 0;
  Scenario scenario = Scenario::fig1_noise;
  std::vector<double> eta_grid{0.05, 0.1, 0.2, 0.5, 1.0, 2.0};
  std::vector<double> epsilon_grid{0.2, 0.1, 0.05, 0.02, 0.01};
  double eta = 1.0;
  double epsilon = 0.02;
  int fw_iters = 10;
  // Iteration cap of every Sinkhorn call.
  int sinkhorn_iters = 1000;
  // 0 picks the scenario default: 50 x 50 for fig1, 20 x 20 for fig3, 50
  // samples per class for feature selection.
  std::size_t n = 0;
  std::size_t m = 0;
  // Trial k uses seed + k.
  std::size_t trials = 1;
  // Empty: results are returned but nothing is written.
  std::filesystem::path output_dir;

  // fig3
  double fig3_sinkhorn_epsilon = 0.1;
  int fig3_fw_iters = 200;
  CostKind fig3_cost = CostKind::euclidean;

  // feature_selection; an empty data_path draws synthetic labeled data.
  std::filesystem::path data_path;
  int label_column = -1;
  std::size_t dims = 20;
  std::size_t informative = 2;
  double shift = 1.0;
  std::size_t top_k = 2;
  // Ranking used to pick the columns of the emitted reduced datasets.
  RankingMethod selection_method = RankingMethod::frot;
  double train_fraction = 0.75;
  bool standardize = true;

  void validate() const;
  std::size_t resolved_n() const;
  std::size_t resolved_m() const;
};

struct Fig1Trial {
  std::uint64_t seed = 0;
  // Unconverged Sinkhorn plans are rounded onto U(a, b); the raw residual
  // stays in plan.marginal_residual of the solver result.
  SinkhornResult ot_clean;
  SinkhornResult ot_noisy;
  Matrix ot_clean_plan;
  Matrix ot_noisy_plan;
  FrotSolution frot_noisy;
  double clean_emd = 0.0;
  // Mass each plan puts on the support of the exact clean-data EMD plan.
  double clean_reference_mass_ot_clean = 0.0;
  double clean_reference_mass_ot_noisy = 0.0;
  double clean_reference_mass_frot = 0.0;
  // <P, C_clean> / EMD(C_clean) for each plan.
  double clean_cost_ratio_ot_clean = 0.0;
  double clean_cost_ratio_ot_noisy = 0.0;
  double clean_cost_ratio_frot = 0.0;
  double alpha_informative = 0.0;
};

struct Fig1Result {
  std::vector<Fig1Trial> trials;
  double min_alpha_informative = 0.0;
  double mean_alpha_informative = 0.0;
  std::vector<std::string> notes;
};

Fig1Result run_fig1(const ExperimentSpec& spec);

struct Fig3EtaRow {
  double eta = 0.0;
  // max_l <P, C_l> at each solver's plan
  double lp_objective = 0.0;
  double fw_emd_objective = 0.0;
  double fw_sinkhorn_objective = 0.0;
  // G_eta at each plan
  double lp_smoothed = 0.0;
  double fw_emd_smoothed = 0.0;
  double fw_sinkhorn_smoothed = 0.0;
  double mse_fw_emd = 0.0;
  double mse_fw_sinkhorn = 0.0;
};

struct Fig3EpsRow {
  double epsilon = 0.0;
  double fw_sinkhorn_objective = 0.0;
  double fw_sinkhorn_smoothed = 0.0;
  double mse_fw_sinkhorn = 0.0;
  double max_subproblem_residual = 0.0;
  int unconverged_subproblems = 0;
};

struct Fig3Result {
  FrotLpResult lp;
  std::vector<Fig3EtaRow> eta_rows;
  std::vector<Fig3EpsRow> eps_rows;
  std::vector<std::string> notes;
};

// Mean of squared entrywise differences.
double plan_mse(const Matrix& a, const Matrix& b);

// The fixed instance: synthetic noisy data at spec.seed with the
// configured per-group cost.
GroupedCost fig3_instance(const ExperimentSpec& spec, Vector* a, Vector* b);

Fig3Result run_fig3(const ExperimentSpec& spec);

struct FeatureTrial {
  std::uint64_t seed = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  FeatureRanking frot;
  FeatureRanking wasserstein;
  FeatureRanking correlation;
  // Synthetic data only: whether every informative feature is in the top k.
  bool frot_hit = false;
  bool wasserstein_hit = false;
  bool correlation_hit = false;
  std::vector<std::size_t> informative;
};

struct FeatureSelectionResult {
  std::vector<FeatureTrial> trials;
  std::vector<std::string> columns;
  bool synthetic = true;
  double frot_hit_rate = 0.0;
  double wasserstein_hit_rate = 0.0;
  double correlation_hit_rate = 0.0;
  std::vector<std::string> notes;
};

FeatureSelectionResult run_feature_selection(const ExperimentSpec& spec);

// JSON object with every ExperimentSpec field.
std::string experiment_spec_to_json(const ExperimentSpec& spec);
// Overrides the fields present in a JSON object; unknown keys are rejected.
void apply_experiment_config(ExperimentSpec& spec, const std::string& json_text);

struct ExperimentRun {
  std::string result_json;
  // Files written, relative to output_dir.
  std::vector<std::string> outputs;
  std::vector<std::string> notes;
};

// Runs the configured scenario and, if output_dir is set, writes its result
// files there (result.json plus plan and curve files). The manifest is left
// to the caller.
ExperimentRun run_experiment(const ExperimentSpec& spec);

}  // namespace frot
