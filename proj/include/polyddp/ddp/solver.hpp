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
#ifndef POLYDDP_DDP_SOLVER_HPP
#define POLYDDP_DDP_SOLVER_HPP

#include <functional>

#include "polyddp/ddp/forward_pass.hpp"
#include "polyddp/ddp/settings.hpp"

namespace polyddp::ddp {

/// One DDP iteration as it appears in convergence logs.
struct IterationRecord {
  int iteration = 0;
  double J = 0.0;
  double g_max = 0.0;
  double alpha = 0.0;  // 0 when no step was accepted
  double rho = 0.0;
  double approx_share = 0.0;
};

enum class Outcome { Converged, MaxIterations, RegularizationExhausted };

struct DdpResult {
  Trajectory traj;
  int iterations = 0;
  Outcome outcome = Outcome::Converged;
  ApproxStats approx;  // summed over accepted forward passes

  bool converged() const { return outcome == Outcome::Converged; }
};

using IterationCallback = std::function<void(const IterationRecord&)>;

/**
 * Sweep / line-searched forward pass until an accepted step changes J by at
 * most eps_ddp and so would the full step (alpha = 1); a small decrease from
 * a damped step alone is not taken as convergence. The first alpha of the ladder with J* < J is accepted; if
 * none is, the regularization is increased and the sweep repeated, unless
 * the full step already changes J by no more than eps_ddp.
 */
DdpResult ddp_solve(const Problem& problem, Trajectory traj, const SolverVariant& variant,
                    const DdpSettings& settings, const IterationCallback& on_iteration = {});

}  // namespace polyddp::ddp

#endif  // POLYDDP_DDP_SOLVER_HPP
