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
#ifndef POLYDDP_OCP_CONSTRAINTS_HPP
#define POLYDDP_OCP_CONSTRAINTS_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "polyddp/ocp/costs.hpp"

namespace polyddp::ocp {

/**
 * Path constraints [u'u - u_max^2, m_dry - m] (both inequalities, <= 0) and
 * terminal equality residuals x_N - x_t over the components selected by
 * `terminal`. There are no path equalities or terminal inequalities.
 * Stacking order within a stage is [inequalities..., equalities...].
 */
struct ConstraintSet {
  double u_max = 1.0;  // normalized thrust
  double m_dry = 0.5;  // normalized mass
  TerminalKind terminal = TerminalKind::Cartesian;
  State<double> target{};

  int n_ineq() const { return 2; }
  int n_eq() const { return 0; }
  int n_tineq() const { return 0; }
  int n_teq() const { return ocp::terminal_size(terminal); }
  int path_size() const { return n_ineq() + n_eq(); }
  int terminal_size() const { return n_tineq() + n_teq(); }
  bool path_is_equality(int i) const { return i >= n_ineq(); }
  /// Magnitude of the bound in path constraint i, for relative tolerances.
  double path_scale(int i) const { return i == 0 ? u_max * u_max : m_dry; }
  bool terminal_is_equality(int i) const { return i >= n_tineq(); }

  void validate() const;

  template <class T>
  std::vector<T> path(const State<T>& x, const Control<T>& u) const {
    return {u[0] * u[0] + u[1] * u[1] + u[2] * u[2] - u_max * u_max, m_dry - x[6]};
  }

  template <class T>
  std::vector<T> terminal_residual(const State<T>& x) const {
    std::vector<T> out;
    out.reserve(n_teq());
    for (int i = 0; i < n_teq(); ++i) out.push_back(x[i] - target[i]);
    return out;
  }
};

/// Stage constraint values G = (g_0, ..., g_N) and the largest violation.
struct ConstraintValues {
  std::vector<Eigen::VectorXd> g;
  double g_max = 0.0;
};

/// Violation of a single value: |g| for equalities, max(g, 0) for inequalities.
inline double violation(double g, bool equality) { return equality ? std::fabs(g) : std::max(g, 0.0); }

/// X has N+1 states, U has N controls.
ConstraintValues eval_constraints(const ConstraintSet& set, std::span<const State<double>> X,
                                  std::span<const Control<double>> U);

/// Largest violation over already evaluated values; ordering-independent.
double max_violation(const ConstraintSet& set, std::span<const Eigen::VectorXd> g);

/**
 * base + [lambda + I_mu / 2 * g]' g. I_mu(i) is mu(i) for equalities and for
 * inequalities that are violated or carry a positive multiplier, else 0.
 * Activity is decided on the constant part, so the same branch is taken for
 * plain and polynomial evaluation.
 */
template <class T, class IsEquality>
T augment(T base, std::span<const T> g, const Eigen::VectorXd& lambda, const Eigen::VectorXd& mu,
          IsEquality is_equality) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double gi = da::value_of(g[i]);
    const bool active = is_equality(static_cast<int>(i)) || gi > 0.0 || lambda[i] > 0.0;
    const double weight = active ? 0.5 * mu[i] : 0.0;
    if (weight == 0.0 && lambda[i] == 0.0) continue;
    base += (g[i] * weight + lambda[i]) * g[i];
  }
  return base;
}

}  // namespace polyddp::ocp

#endif  // POLYDDP_OCP_CONSTRAINTS_HPP
