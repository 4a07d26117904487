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
#include "polyddp/ocp/constraints.hpp"

#include <algorithm>

namespace polyddp::ocp {

void CostSpec::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ArgumentError("CostSpec: eta must lie in [0, 1]");
  if (!(sigma > 0.0)) throw ArgumentError("CostSpec: sigma must be > 0");
  if (!(weights.position >= 0.0 && weights.velocity >= 0.0))
    throw ArgumentError("CostSpec: terminal weights must be >= 0");
  if (!(control_scale > 0.0)) throw ArgumentError("CostSpec: control_scale must be > 0");
}

void ConstraintSet::validate() const {
  if (!(u_max > 0.0)) throw ArgumentError("ConstraintSet: u_max must be > 0");
  if (!(m_dry > 0.0)) throw ArgumentError("ConstraintSet: m_dry must be > 0");
}

ConstraintValues eval_constraints(const ConstraintSet& set, std::span<const State<double>> X,
                                  std::span<const Control<double>> U) {
  if (X.size() != U.size() + 1) throw ArgumentError("eval_constraints: need N+1 states for N controls");
  ConstraintValues out;
  out.g.reserve(X.size());
  for (std::size_t k = 0; k < U.size(); ++k) {
    const auto g = set.path(X[k], U[k]);
    out.g.emplace_back(Eigen::Map<const Eigen::VectorXd>(g.data(), static_cast<Eigen::Index>(g.size())));
  }
  const auto gt = set.terminal_residual(X.back());
  out.g.emplace_back(Eigen::Map<const Eigen::VectorXd>(gt.data(), static_cast<Eigen::Index>(gt.size())));
  out.g_max = max_violation(set, out.g);
  return out;
}

double max_violation(const ConstraintSet& set, std::span<const Eigen::VectorXd> g) {
  double worst = 0.0;
  const std::size_t last = g.size() - 1;
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (Eigen::Index i = 0; i < g[k].size(); ++i) {
      const bool eq = k == last ? set.terminal_is_equality(static_cast<int>(i))
                                : set.path_is_equality(static_cast<int>(i));
      worst = std::max(worst, violation(g[k][i], eq));
    }
  }
  return worst;
}

}  // namespace polyddp::ocp
