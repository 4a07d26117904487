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
#include "polyddp/ddp/regularization.hpp"

#include <cmath>

#include "polyddp/errors.hpp"

namespace polyddp::ddp {

SolverVariant SolverVariant::parse(const std::string& name) {
  for (const auto& v : all())
    if (v.name() == name) return v;
  throw ArgumentError("unknown solver variant '" + name + "' (expected iLQR, DDP, Q, iLQRDyn, DDPDyn or QDyn)");
}

std::string SolverVariant::name() const {
  std::string base = sweep == Sweep::iLQR ? "iLQR" : sweep == Sweep::DDP ? "DDP" : "Q";
  return dyn_approx ? base + "Dyn" : base;
}

std::vector<SolverVariant> SolverVariant::all() {
  return {{Sweep::iLQR, false}, {Sweep::DDP, false}, {Sweep::Q, false},
          {Sweep::iLQR, true},  {Sweep::DDP, true},  {Sweep::Q, true}};
}

std::vector<double> DdpSettings::default_alpha_ladder() {
  std::vector<double> a;
  for (int i = 0; i <= 10; ++i) a.push_back(std::ldexp(1.0, -i));
  return a;
}

void DdpSettings::validate() const {
  if (!(eps_ddp > 0.0)) throw ArgumentError("DdpSettings: eps_ddp must be > 0");
  if (!(eps_da >= 0.0)) throw ArgumentError("DdpSettings: eps_da must be >= 0");
  if (!(reg_min >= 0.0 && reg0 > 0.0 && reg_max >= reg0)) throw ArgumentError("DdpSettings: bad regularization bounds");
  if (!(reg_scale > 1.0)) throw ArgumentError("DdpSettings: reg_scale must be > 1");
  if (alpha_ladder.empty()) throw ArgumentError("DdpSettings: empty alpha ladder");
  for (double a : alpha_ladder)
    if (!(a > 0.0 && a <= 1.0)) throw ArgumentError("DdpSettings: alpha values must lie in (0, 1]");
  if (max_iters < 1) throw ArgumentError("DdpSettings: max_iters must be >= 1");
}

bool Regularization::increase(const DdpSettings& s) {
  const double next = rho == 0.0 ? s.reg0 : rho * s.reg_scale;
  // Relative slack so that reg0 * scale^n lands on reg_max despite rounding.
  if (next > s.reg_max * (1.0 + 1e-9)) return false;
  rho = next;
  full_steps = 0;
  return true;
}

void Regularization::accepted(bool full_step, const DdpSettings& s) {
  if (!full_step) {
    full_steps = 0;
    return;
  }
  if (++full_steps < 2) return;
  full_steps = 0;
  rho /= s.reg_scale;
  if (rho < s.reg_min * (1.0 - 1e-9)) rho = 0.0;
}

Eigen::MatrixXd regularize(const Eigen::MatrixXd& quu, double rho) {
  Eigen::MatrixXd out = quu;
  out.diagonal().array() += rho;
  return out;
}

}  // namespace polyddp::ddp
