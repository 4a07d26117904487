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
#ifndef POLYDDP_DDP_FORWARD_PASS_HPP
#define POLYDDP_DDP_FORWARD_PASS_HPP

#include <vector>

#include "polyddp/ddp/problem.hpp"

namespace polyddp::ddp {

enum class ForwardMode { Exact, DynApprox };

/// Stages of one forward pass updated by re-centering vs. recomputed.
struct ApproxStats {
  int approximated = 0;
  int recomputed = 0;

  double share() const {
    const int n = approximated + recomputed;
    return n == 0 ? 0.0 : static_cast<double>(approximated) / n;
  }
};

/// True if some dyn[k] was obtained by re-centering rather than expanded at (X[k], U[k]).
bool has_recentered_stages(const Trajectory& traj);

/// From-scratch propagation and expansion of every stage.
Trajectory rollout_initial(const Problem& problem, const std::vector<Eigen::VectorXd>& U0);

/**
 * Result of a forward pass before the remaining expansions are computed.
 * States, controls and J are final; stages with pending[k] set still need
 * a from-scratch expansion, which is deferred until the step is accepted.
 */
struct Candidate {
  Trajectory traj;
  std::vector<char> pending;
  ApproxStats stats;
};

/**
 * u*_k = u_k + alpha a_k + b_k (x*_k - x_k). In DynApprox mode a stage whose
 * joint displacement from its expansion anchor is below the convergence
 * radius of dyn[k] at eps_da is re-centered by composition. Throws
 * DomainError (with the stage index) if the dynamics leave their domain.
 */
Candidate trial_forward_pass(const Problem& problem, const Trajectory& traj, const ControlLaw& law, double alpha,
                             ForwardMode mode, double eps_da);

/// Expands pending stages and all costs.
Trajectory complete(const Problem& problem, Candidate&& candidate);

/// trial_forward_pass followed by complete.
Trajectory forward_pass(const Problem& problem, const Trajectory& traj, const ControlLaw& law, double alpha,
                        ForwardMode mode, double eps_da, ApproxStats* stats = nullptr);

}  // namespace polyddp::ddp

#endif  // POLYDDP_DDP_FORWARD_PASS_HPP
