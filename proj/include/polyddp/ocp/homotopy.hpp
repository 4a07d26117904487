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
#ifndef POLYDDP_OCP_HOMOTOPY_HPP
#define POLYDDP_OCP_HOMOTOPY_HPP

#include <optional>
#include <vector>

namespace polyddp::ocp {

struct HomotopyStep {
  double eta = 1.0;
  double sigma = 1e-2;
};

/**
 * Ordered (eta, sigma) continuation from the energy-optimal problem towards
 * the fuel-optimal one. The first step has eta = 1; both values are
 * non-increasing along the sequence.
 */
struct HomotopySchedule {
  std::vector<HomotopyStep> steps;

  void validate() const;

  /// (1, 1e-2) -> (0.5, 1e-2) -> (0.1, 2e-3) -> (1e-3, 1e-3)
  static HomotopySchedule standard();
};

/// Step following `index`, or nullopt once the schedule is exhausted.
std::optional<HomotopyStep> homotopy_advance(const HomotopySchedule& schedule, int index);

}  // namespace polyddp::ocp

#endif  // POLYDDP_OCP_HOMOTOPY_HPP
