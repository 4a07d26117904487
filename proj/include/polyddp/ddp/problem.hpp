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
#ifndef POLYDDP_DDP_PROBLEM_HPP
#define POLYDDP_DDP_PROBLEM_HPP

#include <vector>

#include <Eigen/Dense>

#include "polyddp/da/poly_map.hpp"

namespace polyddp::ddp {

struct Trajectory;

/**
 * Discrete optimal-control problem as seen by the solvers. Costs returned
 * here are the ones being minimized (already augmented when constraints
 * are handled by penalties). Polynomial expansions live in context(), whose
 * variables are the state displacement followed by the control displacement.
 */
class Problem {
 public:
  virtual ~Problem() = default;

  virtual int nx() const = 0;
  virtual int nu() const = 0;
  virtual int num_stages() const = 0;
  virtual const Eigen::VectorXd& initial_state() const = 0;
  virtual const da::DaContext& context() const = 0;

  virtual Eigen::VectorXd propagate(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const = 0;
  virtual da::PolyMap expand_dynamics(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const = 0;

  virtual double stage_cost(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const = 0;
  virtual da::TruncatedPoly expand_stage_cost(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const = 0;

  /// Terminal cost; its expansion uses only the state variables of context().
  virtual double terminal_cost(const Eigen::VectorXd& x) const = 0;
  virtual da::TruncatedPoly expand_terminal_cost(const Eigen::VectorXd& x) const = 0;

  /// Largest constraint violation of an iterate, for logging. 0 when unconstrained.
  virtual double max_violation(const Trajectory&) const { return 0.0; }
};

/**
 * Iterate of the solver. dyn[k] expands the stage map around (X[k], U[k]);
 * anchor[k] is the point at which dyn[k] was last expanded from scratch
 * (it differs from (X[k], U[k]) after polynomial re-centering).
 */
struct Trajectory {
  std::vector<Eigen::VectorXd> X;  // N + 1 states
  std::vector<Eigen::VectorXd> U;  // N controls
  std::vector<da::PolyMap> dyn;
  std::vector<Eigen::VectorXd> anchor;
  std::vector<da::TruncatedPoly> cost;
  da::TruncatedPoly terminal;
  double J = 0.0;

  int num_stages() const { return static_cast<int>(U.size()); }
};

/// Feedforward a_k (nu) and feedback b_k (nu x nx) per stage.
struct ControlLaw {
  std::vector<Eigen::VectorXd> a;
  std::vector<Eigen::MatrixXd> b;
};

/// Re-expands stage and terminal costs at the current iterate and recomputes J.
void refresh_costs(const Problem& problem, Trajectory& traj);

}  // namespace polyddp::ddp

#endif  // POLYDDP_DDP_PROBLEM_HPP
