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
#include "polyddp/dynamics/propagate.hpp"

namespace polyddp::dynamics {

template State<double> propagate_stage<double>(const Model&, const StageSpec&, State<double>,
                                               const Control<double>&);
template State<da::TruncatedPoly> propagate_stage<da::TruncatedPoly>(const Model&, const StageSpec&,
                                                                     State<da::TruncatedPoly>,
                                                                     const Control<da::TruncatedPoly>&);

State<double> propagate_stage(const Model& model, const StageSpec& stage, std::span<const double> x,
                              std::span<const double> u) {
  if (x.size() != kNx || u.size() != kNu) throw ArgumentError("propagate_stage: bad state/control size");
  State<double> xs;
  Control<double> us;
  std::copy(x.begin(), x.end(), xs.begin());
  std::copy(u.begin(), u.end(), us.begin());
  return propagate_stage<double>(model, stage, xs, us);
}

da::PolyMap expand_stage(const Model& model, const StageSpec& stage, std::span<const double> x,
                         std::span<const double> u, const da::DaContext& ctx) {
  if (ctx.num_vars() != kNx + kNu) throw ArgumentError("expand_stage: context must have 10 variables");
  if (x.size() != kNx || u.size() != kNu) throw ArgumentError("expand_stage: bad state/control size");
  State<da::TruncatedPoly> xs;
  Control<da::TruncatedPoly> us;
  for (int i = 0; i < kNx; ++i) xs[i] = da::TruncatedPoly::variable(ctx, i, x[i]);
  for (int j = 0; j < kNu; ++j) us[j] = da::TruncatedPoly::variable(ctx, kNx + j, u[j]);
  auto out = propagate_stage<da::TruncatedPoly>(model, stage, std::move(xs), us);
  return da::PolyMap(std::vector<da::TruncatedPoly>(out.begin(), out.end()));
}

}  // namespace polyddp::dynamics
