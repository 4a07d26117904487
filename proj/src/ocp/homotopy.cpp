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
#include "polyddp/ocp/homotopy.hpp"

#include "polyddp/errors.hpp"

namespace polyddp::ocp {

void HomotopySchedule::validate() const {
  if (steps.empty()) throw ArgumentError("HomotopySchedule: at least one step required");
  if (steps.front().eta != 1.0) throw ArgumentError("HomotopySchedule: first step must have eta = 1");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    if (!(s.eta >= 0.0 && s.eta <= 1.0)) throw ArgumentError("HomotopySchedule: eta must lie in [0, 1]");
    if (!(s.sigma > 0.0)) throw ArgumentError("HomotopySchedule: sigma must be > 0");
    if (i > 0 && (s.eta > steps[i - 1].eta || s.sigma > steps[i - 1].sigma))
      throw ArgumentError("HomotopySchedule: eta and sigma must be non-increasing");
  }
}

HomotopySchedule HomotopySchedule::standard() {
  return {{{1.0, 1e-2}, {0.5, 1e-2}, {1e-1, 2e-3}, {1e-3, 1e-3}}};
}

std::optional<HomotopyStep> homotopy_advance(const HomotopySchedule& schedule, int index) {
  if (index < 0 || index >= static_cast<int>(schedule.steps.size()))
    throw ArgumentError("homotopy_advance: index out of range");
  if (index + 1 == static_cast<int>(schedule.steps.size())) return std::nullopt;
  return schedule.steps[index + 1];
}

}  // namespace polyddp::ocp
