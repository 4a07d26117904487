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
#include "polyddp/ocp/duals.hpp"

#include <algorithm>

namespace polyddp::ocp {

void DualSettings::validate() const {
  if (!(mu0 > 0.0)) throw ArgumentError("DualSettings: mu0 must be > 0");
  if (!(beta >= 1.0)) throw ArgumentError("DualSettings: beta must be >= 1");
  if (!(mu_max >= mu0)) throw ArgumentError("DualSettings: mu_max must be >= mu0");
}

DualPenaltyState DualPenaltyState::initial(const ConstraintSet& set, int num_stages,
                                           const DualSettings& settings) {
  DualPenaltyState s;
  for (int k = 0; k <= num_stages; ++k) {
    const int n = k < num_stages ? set.path_size() : set.terminal_size();
    s.lambda.push_back(Eigen::VectorXd::Zero(n));
    s.mu.push_back(Eigen::VectorXd::Constant(n, settings.mu0));
  }
  return s;
}

void update_duals(const ConstraintSet& set, const ConstraintValues& G, DualPenaltyState& duals,
                  const DualSettings& settings) {
  if (G.g.size() != duals.lambda.size()) throw ArgumentError("update_duals: stage count mismatch");
  const std::size_t last = G.g.size() - 1;
  for (std::size_t k = 0; k < G.g.size(); ++k) {
    auto& lam = duals.lambda[k];
    auto& mu = duals.mu[k];
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      const bool eq = k == last ? set.terminal_is_equality(static_cast<int>(i))
                                : set.path_is_equality(static_cast<int>(i));
      const double next = lam[i] + mu[i] * G.g[k][i];
      lam[i] = eq ? next : std::max(0.0, next);
      mu[i] = std::min(settings.beta * mu[i], settings.mu_max);
    }
  }
}

}  // namespace polyddp::ocp
