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
#ifndef POLYDDP_OCP_COSTS_HPP
#define POLYDDP_OCP_COSTS_HPP

#include <cmath>

#include "polyddp/dynamics/models.hpp"

namespace polyddp::ocp {

using dynamics::Control;
using dynamics::State;

/// Quadratic weights of the terminal residual, normalized units.
struct TerminalWeights {
  double position = 1.0;
  double velocity = 1.0;
};

/// Which state components the terminal residual covers.
enum class TerminalKind {
  Cartesian,    // r and v (components 0..5)
  Equinoctial,  // a, p, q, r, s (components 0..4); L and m are free
};

struct CostSpec {
  double eta = 1.0;     // energy weight of the homotopy blend
  double sigma = 1e-2;  // pseudo-Huber width
  TerminalWeights weights;
  // Factor taking solver controls to the unit sigma is expressed in
  // (newtons when controls are normalized thrust).
  double control_scale = 1.0;

  void validate() const;
};

/// Number of terminal residual components for a given kind.
constexpr int terminal_size(TerminalKind kind) { return kind == TerminalKind::Cartesian ? 6 : 5; }

/**
 * eta * u'u / 2 + (1 - eta) * sigma * (sqrt(u'u / sigma^2 + 1) - 1), with
 * u scaled by control_scale.
 *
 * The pseudo-Huber term is evaluated as sigma * t / (sqrt(t + 1) + 1) with
 * t = u'u / sigma^2, which avoids cancellation for small thrust.
 */
template <class T>
T stage_cost(const CostSpec& spec, const Control<T>& u) {
  using std::sqrt;
  const T uu = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) * (spec.control_scale * spec.control_scale);
  const T t = uu * (1.0 / (spec.sigma * spec.sigma));
  const T huber = t * da::reciprocal(sqrt(t + 1.0) + 1.0) * spec.sigma;
  return uu * (0.5 * spec.eta) + huber * (1.0 - spec.eta);
}

/// Weighted squared distance to the target over the components selected by `kind`.
template <class T>
T terminal_cost(const TerminalWeights& w, TerminalKind kind, const State<T>& x, const State<double>& target) {
  if (kind == TerminalKind::Equinoctial) {
    T acc = (x[0] - target[0]) * (x[0] - target[0]) * w.position;
    for (int i = 1; i < 5; ++i) acc += (x[i] - target[i]) * (x[i] - target[i]) * w.position;
    return acc;
  }
  T pos = (x[0] - target[0]) * (x[0] - target[0]);
  for (int i = 1; i < 3; ++i) pos += (x[i] - target[i]) * (x[i] - target[i]);
  T vel = (x[3] - target[3]) * (x[3] - target[3]);
  for (int i = 4; i < 6; ++i) vel += (x[i] - target[i]) * (x[i] - target[i]);
  return pos * w.position + vel * w.velocity;
}

}  // namespace polyddp::ocp

#endif  // POLYDDP_OCP_COSTS_HPP
