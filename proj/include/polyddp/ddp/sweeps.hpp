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
#ifndef POLYDDP_DDP_SWEEPS_HPP
#define POLYDDP_DDP_SWEEPS_HPP

#include <optional>

#include "polyddp/ddp/problem.hpp"
#include "polyddp/ddp/regularization.hpp"

namespace polyddp::ddp {

/**
 * Backward sweep from the derivatives held in the expansions of `traj`.
 * Sweep::DDP adds the second-order dynamics terms sum_i V_x^i f^i_(..);
 * Sweep::iLQR drops them. Returns nullopt when Q_uu + rho I is not positive
 * definite at some stage.
 */
std::optional<ControlLaw> backward_sweep(const Trajectory& traj, Sweep kind, double rho);

/**
 * Backward sweep by composition: P_Q = P_l + P_V(P_f - x_{k+1}, 0), gains
 * from the coefficients of P_Q, then P_V = P_Q(dx, a + b dx).
 */
std::optional<ControlLaw> backward_sweep_q(const Trajectory& traj, double rho);

/// Dispatches on the sweep kind.
std::optional<ControlLaw> sweep(const Trajectory& traj, Sweep kind, double rho);

}  // namespace polyddp::ddp

#endif  // POLYDDP_DDP_SWEEPS_HPP
