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
#ifndef POLYDDP_DA_POLY_MAP_HPP
#define POLYDDP_DA_POLY_MAP_HPP

#include <span>
#include <vector>

#include "polyddp/da/poly.hpp"

namespace polyddp::da {

/// Vector of polynomials over one context.
class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<TruncatedPoly> components);

  std::size_t size() const { return comps_.size(); }
  bool empty() const { return comps_.empty(); }
  const DaContext& context() const { return comps_.front().context(); }
  const TruncatedPoly& operator[](std::size_t i) const { return comps_[i]; }
  TruncatedPoly& operator[](std::size_t i) { return comps_[i]; }
  const std::vector<TruncatedPoly>& components() const { return comps_; }
  auto begin() const { return comps_.begin(); }
  auto end() const { return comps_.end(); }

  std::vector<double> constants() const;

 private:
  std::vector<TruncatedPoly> comps_;
};

/// Identity variables delta_0..delta_{n-1} shifted by `offsets`.
std::vector<TruncatedPoly> shifted_variables(const DaContext& ctx, std::span<const double> offsets);

/**
 * outer(inner): substitutes inner[i] for variable i of the outer polynomial.
 * The result lives in the inner polynomials' context; outer may use a
 * different context as long as its variable count equals inner.size().
 */
TruncatedPoly compose(const TruncatedPoly& outer, std::span<const TruncatedPoly> inner);
PolyMap compose(const PolyMap& outer, std::span<const TruncatedPoly> inner);

std::vector<double> evaluate(const PolyMap& map, std::span<const double> point);

/**
 * Displacement norm within which the map's truncation error is estimated to
 * stay below eps. A_k is the largest per-component sum of |coefficients| of
 * degree k. With n the truncation order and at least two nonzero A_k, a line
 * is fitted to log A_k and extrapolated to A_{n+1}; R = (eps / A_{n+1})^(1/(n+1)).
 * Otherwise R = (eps / A_m)^(1/m) with m the highest order of degree >= 2 with
 * A_m > 0, and +inf when there is none.
 */
double convergence_radius(const PolyMap& map, double eps);

}  // namespace polyddp::da

#endif  // POLYDDP_DA_POLY_MAP_HPP
