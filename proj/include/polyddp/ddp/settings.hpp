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
#ifndef POLYDDP_DDP_SETTINGS_HPP
#define POLYDDP_DDP_SETTINGS_HPP

#include <string>
#include <vector>

namespace polyddp::ddp {

enum class Sweep { iLQR, DDP, Q };

/// Backward sweep kind plus whether the forward pass reuses dynamics expansions.
struct SolverVariant {
  Sweep sweep = Sweep::iLQR;
  bool dyn_approx = true;

  /// "iLQR", "DDP", "Q", "iLQRDyn", "DDPDyn" or "QDyn".
  static SolverVariant parse(const std::string& name);
  std::string name() const;
  static std::vector<SolverVariant> all();
  bool operator==(const SolverVariant&) const = default;
};

struct DdpSettings {
  double eps_ddp = 1e-4;  // cost-change tolerance
  double eps_da = 1e-6;   // accuracy required from re-centered dynamics expansions
  double reg0 = 1e-6;     // first nonzero regularization
  double reg_min = 1e-6;  // decreasing below this resets to 0
  double reg_max = 1e8;
  double reg_scale = 10.0;
  std::vector<double> alpha_ladder = default_alpha_ladder();
  int max_iters = 5000;

  void validate() const;
  /// 1, 1/2, ..., 2^-10
  static std::vector<double> default_alpha_ladder();
};

}  // namespace polyddp::ddp

#endif  // POLYDDP_DDP_SETTINGS_HPP
