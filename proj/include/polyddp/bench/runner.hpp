/*
 * Copyright 2026 The polyddp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef POLYDDP_BENCH_RUNNER_HPP
#define POLYDDP_BENCH_RUNNER_HPP

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyddp/bench/scenario.hpp"
#include "polyddp/ddp/transfer_problem.hpp"
#include "polyddp/newton/polish.hpp"

namespace polyddp::bench {

enum class RunOutcome { Converged, DNC };
std::string to_string(RunOutcome outcome);

/// One DDP iteration; `iteration` counts across all inner solves.
struct ConvergenceRow {
  int iteration = 0;
  int phase = 0;
  int aul_iteration = 0;
  double J = 0.0;
  double g_max = 0.0;
  double alpha = 0.0;
  double reg = 0.0;
  double approx_share = 0.0;
};

/// Single-shooting re-propagation of the reported controls from x0.
struct Verification {
  double defect = 0.0;   // max |x_N - reported x_N|, normalized
  double g_max = 0.0;    // constraint violation along the re-propagated trajectory
  double fuel_kg = 0.0;  // m0 - m_N
  bool passed = false;   // defect and g_max within 10 eps_n
};

struct RunReport {
  std::string scenario;
  std::string variant;
  int order = 2;
  double eps_aul = 0.0;
  double eps_da = 0.0;
  double eps_n = 0.0;

  RunOutcome outcome = RunOutcome::DNC;
  std::string failure;  // empty when converged

  double fuel_kg = 0.0;      // from the verification propagation
  double g_max = 0.0;        // from the verification propagation
  double aul_fuel_kg = 0.0;  // before polishing
  double aul_g_max = 0.0;
  int ddp_iterations = 0;
  int aul_iterations = 0;
  int newton_iterations = 0;
  int newton_expansions = 0;
  double approx_share = 0.0;
  double wall_time_s = 0.0;
  double aul_time_s = 0.0;
  double newton_time_s = 0.0;
  Verification verification;

  std::vector<ConvergenceRow> ddp_trace;
  std::vector<newton::NewtonRecord> newton_trace;
  std::vector<Eigen::VectorXd> X, U;  // final trajectory, normalized
};

using ProgressLog = std::function<void(const std::string&)>;

dynamics::Model make_model(const ScenarioConfig& config);
ddp::TransferProblem make_problem(const ScenarioConfig& config);

/**
 * Rollout of the first guess, homotopy AUL solve, Newton polish and an
 * independent verification propagation. Solver failures and domain errors
 * end up in outcome/failure; only invalid configs throw.
 */
RunReport run_scenario(const ScenarioConfig& config, const ProgressLog& log = {});

Verification verify_trajectory(const ScenarioConfig& config, const std::vector<Eigen::VectorXd>& X,
                               const std::vector<Eigen::VectorXd>& U);

struct ComparisonRow {
  std::string variant;
  bool converged = false;
  double fuel_kg = 0.0;
  double J_norm = 0.0;     // fuel relative to the first variant; NaN if either did not converge
  double wall_time_s = 0.0;
  double time_norm = 0.0;  // wall time relative to the first variant
  double approx_share = 0.0;
  int ddp_iterations = 0;
};

/// Runs each variant on the same scenario, one after the other so wall times are comparable.
std::vector<ComparisonRow> compare_variants(const ScenarioConfig& config, const std::vector<ddp::SolverVariant>& variants,
                                            const ProgressLog& log = {}, std::vector<RunReport>* reports = nullptr);

/// Fraction of stages with |u| <= 0.02 u_max or >= 0.98 u_max.
double bang_bang_fraction(const ScenarioConfig& config, const std::vector<Eigen::VectorXd>& U);

}  // namespace polyddp::bench

#endif  // POLYDDP_BENCH_RUNNER_HPP
