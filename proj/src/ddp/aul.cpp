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
#include "polyddp/ddp/aul.hpp"

#include <optional>

#include "polyddp/errors.hpp"

namespace polyddp::ddp {

void AulSettings::validate() const {
  if (!(eps_aul > 0.0)) throw ArgumentError("AulSettings: eps_aul must be > 0");
  if (max_aul_iters < 1) throw ArgumentError("AulSettings: max_aul_iters must be >= 1");
  duals.validate();
}

namespace {

const char* outcome_text(Outcome o) {
  switch (o) {
    case Outcome::Converged: return "converged";
    case Outcome::MaxIterations: return "iteration limit reached";
    case Outcome::RegularizationExhausted: return "regularization exhausted";
  }
  return "unknown";
}

}  // namespace

AulReport aul_solve(TransferProblem& problem, const std::vector<Eigen::VectorXd>& U0, const SolverVariant& variant,
                    const DdpSettings& ddp, const AulSettings& aul, const ocp::HomotopySchedule& schedule,
                    const AulCallback& on_iteration) {
  ddp.validate();
  aul.validate();
  schedule.validate();

  AulReport rep;
  problem.set_duals(ocp::DualPenaltyState::initial(problem.constraints(), problem.num_stages(), aul.duals));
  auto cost = problem.cost();
  cost.eta = schedule.steps.front().eta;
  cost.sigma = schedule.steps.front().sigma;
  problem.set_cost(cost);
  try {
    rep.traj = rollout_initial(problem, U0);
  } catch (const DomainError& e) {
    rep.failure = std::string("initial rollout: ") + e.what();
    return rep;
  }

  for (std::size_t p = 0; p < schedule.steps.size(); ++p) {
    const auto step = schedule.steps[p];
    cost.eta = step.eta;
    cost.sigma = step.sigma;
    problem.set_cost(cost);
    refresh_costs(problem, rep.traj);

    PhaseReport phase{step};
    bool satisfied = false;
    while (phase.aul_iterations < aul.max_aul_iters) {
      ++phase.aul_iterations;
      IterationCallback cb;
      if (on_iteration)
        cb = [&](const IterationRecord& r) { on_iteration({static_cast<int>(p), phase.aul_iterations, r}); };
      DdpResult res = ddp_solve(problem, std::move(rep.traj), variant, ddp, cb);
      rep.traj = std::move(res.traj);
      phase.ddp_iterations += res.iterations;
      rep.approx.approximated += res.approx.approximated;
      rep.approx.recomputed += res.approx.recomputed;
      if (!res.converged()) {
        rep.failure = "phase " + std::to_string(p) + ", outer iteration " + std::to_string(phase.aul_iterations) +
                      ": " + outcome_text(res.outcome);
        break;
      }
      const auto G = problem.constraint_values(rep.traj);
      phase.g_max = G.g_max;
      if (G.g_max <= aul.eps_aul) {
        satisfied = true;
        break;
      }
      auto duals = problem.duals();
      ocp::update_duals(problem.constraints(), G, duals, aul.duals);
      problem.set_duals(std::move(duals));
      refresh_costs(problem, rep.traj);
    }
    phase.J = rep.traj.J;
    rep.ddp_iterations += phase.ddp_iterations;
    rep.aul_iterations += phase.aul_iterations;
    rep.phases.push_back(phase);
    rep.g_max = phase.g_max;
    if (!rep.failure.empty()) return rep;
    if (!satisfied) {
      rep.failure = "phase " + std::to_string(p) + ": constraint violation " + std::to_string(phase.g_max) +
                    " above tolerance after " + std::to_string(aul.max_aul_iters) + " outer iterations";
      return rep;
    }
  }
  rep.converged = true;
  return rep;
}

}  // namespace polyddp::ddp
