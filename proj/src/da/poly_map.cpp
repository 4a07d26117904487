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
#include "polyddp/da/poly_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyddp/errors.hpp"

namespace polyddp::da {

PolyMap::PolyMap(std::vector<TruncatedPoly> components) : comps_(std::move(components)) {
  for (const auto& c : comps_)
    if (&c.context() != &comps_.front().context())
      throw ArgumentError("PolyMap: components must share one context");
}

std::vector<double> PolyMap::constants() const {
  std::vector<double> out(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) out[i] = comps_[i].constant();
  return out;
}

std::vector<TruncatedPoly> shifted_variables(const DaContext& ctx, std::span<const double> offsets) {
  if (offsets.size() != static_cast<std::size_t>(ctx.num_vars()))
    throw ArgumentError("shifted_variables: offsets length does not match num_vars");
  std::vector<TruncatedPoly> vars;
  vars.reserve(offsets.size());
  for (int i = 0; i < ctx.num_vars(); ++i) vars.push_back(TruncatedPoly::variable(ctx, i, offsets[i]));
  return vars;
}

namespace {

// Powers inner^alpha for every monomial alpha of the outer context.
std::vector<TruncatedPoly> monomial_powers(const DaContext& outer, std::span<const TruncatedPoly> inner) {
  if (inner.size() != static_cast<std::size_t>(outer.num_vars()))
    throw ArgumentError("compose: inner arity does not match outer num_vars");
  const DaContext& ictx = inner.front().context();
  for (const auto& p : inner)
    if (&p.context() != &ictx) throw ArgumentError("compose: inner polynomials must share a context");
  std::vector<TruncatedPoly> mono;
  mono.reserve(outer.size());
  mono.emplace_back(ictx, 1.0);
  for (std::size_t k = 1; k < outer.size(); ++k) {
    if (outer.degree(k) == 1)
      mono.push_back(inner[outer.parent_var(k)]);
    else
      mono.push_back(mono[outer.parent(k)] * inner[outer.parent_var(k)]);
  }
  return mono;
}

TruncatedPoly accumulate(const TruncatedPoly& outer, const std::vector<TruncatedPoly>& mono) {
  const auto c = outer.coefficients();
  TruncatedPoly out(mono.front().context(), c[0]);
  for (std::size_t k = 1; k < c.size(); ++k)
    if (c[k] != 0.0) out.add_scaled(c[k], mono[k]);
  return out;
}

}  // namespace

TruncatedPoly compose(const TruncatedPoly& outer, std::span<const TruncatedPoly> inner) {
  return accumulate(outer, monomial_powers(outer.context(), inner));
}

PolyMap compose(const PolyMap& outer, std::span<const TruncatedPoly> inner) {
  const auto mono = monomial_powers(outer.context(), inner);
  std::vector<TruncatedPoly> out;
  out.reserve(outer.size());
  for (const auto& comp : outer) out.push_back(accumulate(comp, mono));
  return PolyMap(std::move(out));
}

std::vector<double> evaluate(const PolyMap& map, std::span<const double> point) {
  std::vector<double> out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = evaluate(map[i], point);
  return out;
}

double convergence_radius(const PolyMap& map, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("convergence_radius: eps must be > 0");
  if (map.empty()) return std::numeric_limits<double>::infinity();
  const int n = map.context().order();
  std::vector<double> A(n + 1, 0.0);
  for (int k = 1; k <= n; ++k)
    for (const auto& comp : map) A[k] = std::max(A[k], comp.degree_abs_sum(k));

  int top = n;
  while (top >= 2 && A[top] == 0.0) --top;
  if (top < 2) return std::numeric_limits<double>::infinity();
  if (top < n) return std::pow(eps / A[top], 1.0 / top);

  // Least-squares line through (k, log A_k), extrapolated to order n + 1.
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, t0 = 0.0, t1 = 0.0;
  for (int k = 1; k <= n; ++k) {
    if (A[k] == 0.0) continue;
    const double y = std::log(A[k]);
    s0 += 1.0;
    s1 += k;
    s2 += static_cast<double>(k) * k;
    t0 += y;
    t1 += k * y;
  }
  if (s0 < 2.0) return std::pow(eps / A[n], 1.0 / n);
  const double slope = (s0 * t1 - s1 * t0) / (s0 * s2 - s1 * s1);
  const double icept = (t0 - slope * s1) / s0;
  const double next = std::exp(icept + slope * (n + 1));
  return std::pow(eps / next, 1.0 / (n + 1));
}

}  // namespace polyddp::da
