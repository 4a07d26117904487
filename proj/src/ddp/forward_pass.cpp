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
#include "polyddp/ddp/forward_pass.hpp"

#include <cmath>
#include <string>

#include "polyddp/errors.hpp"

namespace polyddp::ddp {

namespace {

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd join(const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
  Eigen::VectorXd z(x.size() + u.size());
  z << x, u;
  return z;
}

DomainError at_stage(const DomainError& e, int k) { return e.in_context("stage " + std::to_string(k)); }

}  // namespace

void refresh_costs(const Problem& problem, Trajectory& traj) {
  const int N = traj.num_stages();
  traj.cost.resize(N);
  double J = 0.0;
  for (int k = 0; k < N; ++k) {
    traj.cost[k] = problem.expand_stage_cost(k, traj.X[k], traj.U[k]);
    J += traj.cost[k].constant();
  }
  traj.terminal = problem.expand_terminal_cost(traj.X[N]);
  J += traj.terminal.constant();
  traj.J = J;
}

bool has_recentered_stages(const Trajectory& traj) {
  for (int k = 0; k < traj.num_stages(); ++k)
    if (traj.anchor[k] != join(traj.X[k], traj.U[k])) return true;
  return false;
}

Trajectory rollout_initial(const Problem& problem, const std::vector<Eigen::VectorXd>& U0) {
  const int N = problem.num_stages();
  if (static_cast<int>(U0.size()) != N) throw ArgumentError("rollout_initial: need one control per stage");
  Trajectory t;
  t.X.push_back(problem.initial_state());
  for (int k = 0; k < N; ++k) {
    if (U0[k].size() != problem.nu()) throw ArgumentError("rollout_initial: bad control size");
    t.U.push_back(U0[k]);
    try {
      t.dyn.push_back(problem.expand_dynamics(k, t.X[k], t.U[k]));
    } catch (const DomainError& e) {
      throw at_stage(e, k);
    }
    t.anchor.push_back(join(t.X[k], t.U[k]));
    t.X.push_back(to_vector(t.dyn.back().constants()));
  }
  refresh_costs(problem, t);
  return t;
}

Candidate trial_forward_pass(const Problem& problem, const Trajectory& traj, const ControlLaw& law, double alpha,
                             ForwardMode mode, double eps_da) {
  const int N = traj.num_stages();
  const int nx = problem.nx();
  const bool reuse = mode == ForwardMode::DynApprox && eps_da > 0.0;
  Candidate c;
  auto& out = c.traj;
  out.X.reserve(N + 1);
  out.X.push_back(traj.X[0]);
  out.U.resize(N);
  out.dyn.resize(N);
  out.anchor.resize(N);
  c.pending.assign(N, 0);

  double J = 0.0;
  for (int k = 0; k < N; ++k) {
    const Eigen::VectorXd& xs = out.X[k];
    const Eigen::VectorXd dx = xs - traj.X[k];
    const Eigen::VectorXd du = alpha * law.a[k] + law.b[k] * dx;
    out.U[k] = traj.U[k] + du;

    bool approximated = false;
    if (reuse) {
      // The re-centered expansion equals the original one evaluated at the
      // cumulative displacement, so the radius test is made from its anchor.
      const auto& anchor = traj.anchor[k];
      const double disp = std::sqrt((xs - anchor.head(nx)).squaredNorm() + (out.U[k] - anchor.tail(du.size())).squaredNorm());
      const double radius = da::convergence_radius(traj.dyn[k], eps_da);
      if (disp < radius) {
        const Eigen::VectorXd shift = join(dx, du);
        const auto vars = da::shifted_variables(traj.dyn[k].context(), std::span<const double>(shift.data(), shift.size()));
        out.dyn[k] = da::compose(traj.dyn[k], vars);
        out.anchor[k] = anchor;
        out.X.push_back(to_vector(out.dyn[k].constants()));
        approximated = true;
      }
    }
    if (!approximated) {
      try {
        out.X.push_back(problem.propagate(k, xs, out.U[k]));
      } catch (const DomainError& e) {
        throw at_stage(e, k);
      }
      out.anchor[k] = join(xs, out.U[k]);
      c.pending[k] = 1;
    }
    (approximated ? c.stats.approximated : c.stats.recomputed) += 1;
    J += problem.stage_cost(k, out.X[k], out.U[k]);
  }
  J += problem.terminal_cost(out.X[N]);
  out.J = J;
  return c;
}

Trajectory complete(const Problem& problem, Candidate&& candidate) {
  Trajectory t = std::move(candidate.traj);
  for (int k = 0; k < t.num_stages(); ++k) {
    if (!candidate.pending[k]) continue;
    try {
      t.dyn[k] = problem.expand_dynamics(k, t.X[k], t.U[k]);
    } catch (const DomainError& e) {
      throw at_stage(e, k);
    }
  }
  refresh_costs(problem, t);
  return t;
}

Trajectory forward_pass(const Problem& problem, const Trajectory& traj, const ControlLaw& law, double alpha,
                        ForwardMode mode, double eps_da, ApproxStats* stats) {
  Candidate c = trial_forward_pass(problem, traj, law, alpha, mode, eps_da);
  if (stats) *stats = c.stats;
  return complete(problem, std::move(c));
}

}  // namespace polyddp::ddp
