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
#ifndef POLYDDP_OCP_DUALS_HPP
#define POLYDDP_OCP_DUALS_HPP

#include <vector>

#include <Eigen/Dense>

#include "polyddp/ocp/constraints.hpp"

namespace polyddp::ocp {

struct DualSettings {
  double mu0 = 10.0;     // initial penalty
  double beta = 10.0;    // penalty growth factor
  double mu_max = 1e8;   // penalty cap

  void validate() const;
};

/// Multipliers and penalties per stage; entry N belongs to the terminal constraints.
struct DualPenaltyState {
  std::vector<Eigen::VectorXd> lambda;
  std::vector<Eigen::VectorXd> mu;

  /// lambda = 0 and mu = settings.mu0 for N stages plus the terminal block.
  static DualPenaltyState initial(const ConstraintSet& set, int num_stages, const DualSettings& settings);
};

/**
 * First-order update: lambda' = lambda + mu * g for equalities,
 * max(0, lambda + mu * g) for inequalities; mu' = min(beta * mu, mu_max).
 */
void update_duals(const ConstraintSet& set, const ConstraintValues& G, DualPenaltyState& duals,
                  const DualSettings& settings);

}  // namespace polyddp::ocp

#endif  // POLYDDP_OCP_DUALS_HPP
