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
#ifndef POLYDDP_DDP_TRANSFER_PROBLEM_HPP
#define POLYDDP_DDP_TRANSFER_PROBLEM_HPP

#include "polyddp/ddp/problem.hpp"
#include "polyddp/dynamics/propagate.hpp"
#include "polyddp/ocp/constraints.hpp"
#include "polyddp/ocp/duals.hpp"

namespace polyddp::ddp {

/**
 * Low-thrust transfer with N equal stages, the homotopy stage cost and
 * augmented-Lagrangian terms for the path and terminal constraints.
 * The stage cost sees thrust in newtons (cost().control_scale is set to the
 * model's thrust unit), so sigma is a thrust width in N.
 */
class TransferProblem : public Problem {
 public:
  TransferProblem(dynamics::Model model, dynamics::StageSpec stage, int num_stages,
                  const dynamics::State<double>& x0, ocp::ConstraintSet constraints, int order);

  int nx() const override { return dynamics::kNx; }
  int nu() const override { return dynamics::kNu; }
  int num_stages() const override { return num_stages_; }
  const Eigen::VectorXd& initial_state() const override { return x0_; }
  const da::DaContext& context() const override { return *ctx_; }

  Eigen::VectorXd propagate(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;
  da::PolyMap expand_dynamics(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;
  double stage_cost(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;
  da::TruncatedPoly expand_stage_cost(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;
  double terminal_cost(const Eigen::VectorXd& x) const override;
  da::TruncatedPoly expand_terminal_cost(const Eigen::VectorXd& x) const override;
  double max_violation(const Trajectory& traj) const override;

  const dynamics::Model& model() const { return model_; }
  const dynamics::StageSpec& stage() const { return stage_; }
  const ocp::ConstraintSet& constraints() const { return constraints_; }
  const ocp::CostSpec& cost() const { return cost_; }
  const ocp::DualPenaltyState& duals() const { return duals_; }
  void set_cost(const ocp::CostSpec& cost);
  void set_duals(ocp::DualPenaltyState duals);

  ocp::ConstraintValues constraint_values(const Trajectory& traj) const;

 private:
  template <class T>
  T stage_cost_impl(int k, const dynamics::State<T>& x, const dynamics::Control<T>& u) const;
  template <class T>
  T terminal_cost_impl(const dynamics::State<T>& x) const;

  dynamics::Model model_;
  dynamics::StageSpec stage_;
  int num_stages_;
  Eigen::VectorXd x0_;
  ocp::ConstraintSet constraints_;
  const da::DaContext* ctx_;
  ocp::CostSpec cost_;
  ocp::DualPenaltyState duals_;
};

/// Eigen <-> fixed-size conversions used at the problem boundary.
dynamics::State<double> to_state(const Eigen::VectorXd& x);
dynamics::Control<double> to_control(const Eigen::VectorXd& u);

}  // namespace polyddp::ddp

#endif  // POLYDDP_DDP_TRANSFER_PROBLEM_HPP
