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
#include "polyddp/ddp/transfer_problem.hpp"

namespace polyddp::ddp {

using dynamics::Control;
using dynamics::kNu;
using dynamics::kNx;
using dynamics::State;

State<double> to_state(const Eigen::VectorXd& x) {
  if (x.size() != kNx) throw ArgumentError("state must have 7 components");
  State<double> s;
  for (int i = 0; i < kNx; ++i) s[i] = x[i];
  return s;
}

Control<double> to_control(const Eigen::VectorXd& u) {
  if (u.size() != kNu) throw ArgumentError("control must have 3 components");
  return {u[0], u[1], u[2]};
}

namespace {

Eigen::VectorXd to_eigen(const State<double>& x) { return Eigen::Map<const Eigen::VectorXd>(x.data(), kNx); }

void poly_point(const da::DaContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                State<da::TruncatedPoly>& xp, Control<da::TruncatedPoly>& up) {
  for (int i = 0; i < kNx; ++i) xp[i] = da::TruncatedPoly::variable(ctx, i, x[i]);
  for (int j = 0; j < kNu; ++j) up[j] = da::TruncatedPoly::variable(ctx, kNx + j, u[j]);
}

}  // namespace

TransferProblem::TransferProblem(dynamics::Model model, dynamics::StageSpec stage, int num_stages,
                                 const State<double>& x0, ocp::ConstraintSet constraints, int order)
    : model_(std::move(model)),
      stage_(stage),
      num_stages_(num_stages),
      x0_(to_eigen(x0)),
      constraints_(constraints),
      ctx_(&da::DaContext::get(kNx + kNu, order)) {
  stage_.validate();
  constraints_.validate();
  if (num_stages < 1) throw ArgumentError("TransferProblem: need at least one stage");
  if (order < 2) throw ArgumentError("TransferProblem: expansion order must be >= 2");
  cost_.control_scale = model_.thrust_unit();
  duals_ = ocp::DualPenaltyState::initial(constraints_, num_stages_, ocp::DualSettings{});
}

void TransferProblem::set_cost(const ocp::CostSpec& cost) {
  cost.validate();
  cost_ = cost;
}

void TransferProblem::set_duals(ocp::DualPenaltyState duals) {
  if (static_cast<int>(duals.lambda.size()) != num_stages_ + 1 || duals.mu.size() != duals.lambda.size())
    throw ArgumentError("TransferProblem: dual state has the wrong number of stages");
  duals_ = std::move(duals);
}

Eigen::VectorXd TransferProblem::propagate(int, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  return to_eigen(dynamics::propagate_stage<double>(model_, stage_, to_state(x), to_control(u)));
}

da::PolyMap TransferProblem::expand_dynamics(int, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  return dynamics::expand_stage(model_, stage_, std::span<const double>(x.data(), kNx),
                                std::span<const double>(u.data(), kNu), *ctx_);
}

template <class T>
T TransferProblem::stage_cost_impl(int k, const State<T>& x, const Control<T>& u) const {
  const auto g = constraints_.path(x, u);
  return ocp::augment<T>(ocp::stage_cost(cost_, u), g, duals_.lambda[k], duals_.mu[k],
                         [this](int i) { return constraints_.path_is_equality(i); });
}

template <class T>
T TransferProblem::terminal_cost_impl(const State<T>& x) const {
  const auto g = constraints_.terminal_residual(x);
  return ocp::augment<T>(ocp::terminal_cost(cost_.weights, constraints_.terminal, x, constraints_.target), g,
                         duals_.lambda[num_stages_], duals_.mu[num_stages_],
                         [this](int i) { return constraints_.terminal_is_equality(i); });
}

double TransferProblem::stage_cost(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  return stage_cost_impl<double>(k, to_state(x), to_control(u));
}

da::TruncatedPoly TransferProblem::expand_stage_cost(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  State<da::TruncatedPoly> xp;
  Control<da::TruncatedPoly> up;
  poly_point(*ctx_, x, u, xp, up);
  return stage_cost_impl(k, xp, up);
}

double TransferProblem::terminal_cost(const Eigen::VectorXd& x) const { return terminal_cost_impl<double>(to_state(x)); }

da::TruncatedPoly TransferProblem::expand_terminal_cost(const Eigen::VectorXd& x) const {
  State<da::TruncatedPoly> xp;
  Control<da::TruncatedPoly> up;
  poly_point(*ctx_, x, Eigen::VectorXd::Zero(kNu), xp, up);
  return terminal_cost_impl(xp);
}

ocp::ConstraintValues TransferProblem::constraint_values(const Trajectory& traj) const {
  std::vector<State<double>> X;
  std::vector<Control<double>> U;
  for (const auto& x : traj.X) X.push_back(to_state(x));
  for (const auto& u : traj.U) U.push_back(to_control(u));
  return ocp::eval_constraints(constraints_, X, U);
}

double TransferProblem::max_violation(const Trajectory& traj) const { return constraint_values(traj).g_max; }

}  // namespace polyddp::ddp
