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
#ifndef POLYDDP_DDP_AUL_HPP
#define POLYDDP_DDP_AUL_HPP

#include <string>
#include <vector>

#include "polyddp/ddp/solver.hpp"
#include "polyddp/ddp/transfer_problem.hpp"
#include "polyddp/ocp/homotopy.hpp"

namespace polyddp::ddp {

struct AulSettings {
  double eps_aul = 1e-6;
  int max_aul_iters = 50;  // per homotopy phase
  ocp::DualSettings duals;

  void validate() const;
};

struct PhaseReport {
  ocp::HomotopyStep step;
  int ddp_iterations = 0;
  int aul_iterations = 0;
  double J = 0.0;
  double g_max = 0.0;
};

struct AulReport {
  Trajectory traj;
  bool converged = false;
  std::string failure;  // empty when converged
  std::vector<PhaseReport> phases;
  int ddp_iterations = 0;
  int aul_iterations = 0;
  double g_max = 0.0;
  ApproxStats approx;
};

/// Iteration record tagged with the homotopy phase and outer iteration it belongs to.
struct AulIterationRecord {
  int phase = 0;
  int aul_iteration = 0;
  IterationRecord ddp;
};
using AulCallback = std::function<void(const AulIterationRecord&)>;

/**
 * Outer loop: for each (eta, sigma) of the schedule, repeat inner DDP
 * solves on the augmented costs and dual updates until g_max <= eps_aul.
 * Multipliers and penalties carry over between phases. The problem's
 * cost and duals are modified in place.
 */
AulReport aul_solve(TransferProblem& problem, const std::vector<Eigen::VectorXd>& U0, const SolverVariant& variant,
                    const DdpSettings& ddp, const AulSettings& aul, const ocp::HomotopySchedule& schedule,
                    const AulCallback& on_iteration = {});

}  // namespace polyddp::ddp

#endif  // POLYDDP_DDP_AUL_HPP
