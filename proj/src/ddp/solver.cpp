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
#include "polyddp/ddp/solver.hpp"

#include <cmath>
#include <optional>

#include "polyddp/ddp/regularization.hpp"
#include "polyddp/ddp/sweeps.hpp"
#include "polyddp/errors.hpp"

namespace polyddp::ddp {

DdpResult ddp_solve(const Problem& problem, Trajectory traj, const SolverVariant& variant,
                    const DdpSettings& settings, const IterationCallback& on_iteration) {
  settings.validate();
  const ForwardMode mode = variant.dyn_approx ? ForwardMode::DynApprox : ForwardMode::Exact;
  DdpResult res;
  res.traj = std::move(traj);
  Regularization reg;

  while (true) {
    if (res.iterations >= settings.max_iters) {
      res.outcome = Outcome::MaxIterations;
      break;
    }
    const auto law = sweep(res.traj, variant.sweep, reg.rho);
    if (!law) {
      if (!reg.increase(settings)) {
        res.outcome = Outcome::RegularizationExhausted;
        break;
      }
      continue;
    }
    ++res.iterations;

    std::optional<Candidate> accepted;
    double alpha = 0.0;
    double J_full = std::nan("");
    for (std::size_t i = 0; i < settings.alpha_ladder.size(); ++i) {
      const double a = settings.alpha_ladder[i];
      try {
        Candidate c = trial_forward_pass(problem, res.traj, *law, a, mode, settings.eps_da);
        if (i == 0) J_full = c.traj.J;
        if (c.traj.J < res.traj.J) {
          accepted = std::move(c);
          alpha = a;
          break;
        }
      } catch (const DomainError&) {
        // Step left the dynamics' domain; try a shorter one.
      }
    }

    IterationRecord rec;
    rec.iteration = res.iterations;
    rec.rho = reg.rho;
    if (accepted) {
      const double decrease = res.traj.J - accepted->traj.J;
      const bool full_step_small = alpha == 1.0 || std::fabs(J_full - res.traj.J) <= settings.eps_ddp;
      res.approx.approximated += accepted->stats.approximated;
      res.approx.recomputed += accepted->stats.recomputed;
      rec.approx_share = accepted->stats.share();
      res.traj = complete(problem, std::move(*accepted));
      reg.accepted(alpha == settings.alpha_ladder.front() && alpha == 1.0, settings);
      rec.alpha = alpha;
      rec.J = res.traj.J;
      rec.g_max = problem.max_violation(res.traj);
      if (on_iteration) on_iteration(rec);
      if (decrease <= settings.eps_ddp && full_step_small) break;
      continue;
    }

    rec.J = res.traj.J;
    rec.g_max = problem.max_violation(res.traj);
    if (on_iteration) on_iteration(rec);
    // No decrease anywhere on the ladder: stationary if even the full step
    // changes J by less than the tolerance, otherwise damp and retry.
    if (std::isfinite(J_full) && std::fabs(J_full - res.traj.J) <= settings.eps_ddp) break;
    // Re-centered stages carry up to eps_da of error, which can hide any
    // decrease; re-expand them all from scratch before damping further.
    if (mode == ForwardMode::DynApprox && has_recentered_stages(res.traj)) {
      try {
        res.traj = rollout_initial(problem, res.traj.U);
      } catch (const DomainError&) {
        res.outcome = Outcome::RegularizationExhausted;
        break;
      }
      continue;
    }
    if (!reg.increase(settings)) {
      res.outcome = Outcome::RegularizationExhausted;
      break;
    }
  }
  return res;
}

}  // namespace polyddp::ddp
