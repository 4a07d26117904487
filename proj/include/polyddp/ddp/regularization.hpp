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
#ifndef POLYDDP_DDP_REGULARIZATION_HPP
#define POLYDDP_DDP_REGULARIZATION_HPP

#include <Eigen/Dense>

#include "polyddp/ddp/settings.hpp"

namespace polyddp::ddp {

/// Diagonal shift added to Q_uu. Starts at 0 for every solve.
struct Regularization {
  double rho = 0.0;
  int full_steps = 0;  // consecutive accepted alpha = 1 steps

  /// 0 -> reg0, otherwise rho * reg_scale. Returns false (rho unchanged) past reg_max.
  bool increase(const DdpSettings& s);
  /// Called after an accepted step; divides rho by reg_scale after two full steps in a row.
  void accepted(bool full_step, const DdpSettings& s);
};

/// Q_uu + rho * I
Eigen::MatrixXd regularize(const Eigen::MatrixXd& quu, double rho);

}  // namespace polyddp::ddp

#endif  // POLYDDP_DDP_REGULARIZATION_HPP
