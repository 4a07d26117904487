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
#ifndef POLYDDP_DYNAMICS_PROPAGATE_HPP
#define POLYDDP_DYNAMICS_PROPAGATE_HPP

#include <span>
#include <string>

#include "polyddp/dynamics/models.hpp"

namespace polyddp::dynamics {

/// Fixed-step classical RK4 over one stage with the control held constant.
template <class T>
State<T> propagate_stage(const Model& model, const StageSpec& stage, State<T> x, const Control<T>& u) {
  const double h = stage.dt / stage.substeps;
  const double h2 = 0.5 * h;
  const double h6 = h / 6.0;
  for (int step = 0; step < stage.substeps; ++step) {
    try {
      const State<T> k1 = model.rhs(x, u);
      State<T> tmp = x;
      for (int i = 0; i < kNx; ++i) tmp[i] = x[i] + k1[i] * h2;
      const State<T> k2 = model.rhs(tmp, u);
      for (int i = 0; i < kNx; ++i) tmp[i] = x[i] + k2[i] * h2;
      const State<T> k3 = model.rhs(tmp, u);
      for (int i = 0; i < kNx; ++i) tmp[i] = x[i] + k3[i] * h;
      const State<T> k4 = model.rhs(tmp, u);
      for (int i = 0; i < kNx; ++i) x[i] = x[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * h6;
    } catch (const DomainError& e) {
      throw e.in_context("substep " + std::to_string(step));
    }
  }
  return x;
}

State<double> propagate_stage(const Model& model, const StageSpec& stage, std::span<const double> x,
                              std::span<const double> u);

/**
 * Taylor expansion of the stage map around (x, u). Variables 0..6 are the
 * state displacement and 7..9 the control displacement; ctx must have 10
 * variables.
 */
da::PolyMap expand_stage(const Model& model, const StageSpec& stage, std::span<const double> x,
                         std::span<const double> u, const da::DaContext& ctx);

extern template State<double> propagate_stage<double>(const Model&, const StageSpec&, State<double>,
                                                      const Control<double>&);
extern template State<da::TruncatedPoly> propagate_stage<da::TruncatedPoly>(
    const Model&, const StageSpec&, State<da::TruncatedPoly>, const Control<da::TruncatedPoly>&);

}  // namespace polyddp::dynamics

#endif  // POLYDDP_DYNAMICS_PROPAGATE_HPP
