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
#include "polyddp/da/poly.hpp"

#include <array>
#include <cmath>

#include "polyddp/da/kernels.hpp"
#include "polyddp/errors.hpp"

namespace polyddp::da {

namespace {

void flush_tiny(std::vector<double>& c) {
  for (std::size_t k = 1; k < c.size(); ++k)
    if (std::fabs(c[k]) < kDropThreshold) c[k] = 0.0;
}

}  // namespace

TruncatedPoly::TruncatedPoly(const DaContext& ctx, double constant)
    : ctx_(&ctx), c_(ctx.size(), 0.0) {
  c_[0] = constant;
}

TruncatedPoly TruncatedPoly::variable(const DaContext& ctx, int index, double center) {
  if (index < 0 || index >= ctx.num_vars())
    throw ArgumentError("variable index " + std::to_string(index) + " out of range");
  TruncatedPoly p(ctx, center);
  p.c_[ctx.linear_index(index)] = 1.0;
  return p;
}

void TruncatedPoly::require_same(const TruncatedPoly& other) const {
  if (ctx_ != other.ctx_ || ctx_ == nullptr)
    throw ArgumentError("TruncatedPoly: operands belong to different contexts");
}

std::vector<std::pair<MultiIndex, double>> TruncatedPoly::terms() const {
  std::vector<std::pair<MultiIndex, double>> out;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0.0) out.emplace_back(ctx_->multi_index(k), c_[k]);
  return out;
}

double TruncatedPoly::degree_abs_sum(int d) const {
  if (d > ctx_->order()) return 0.0;
  const std::size_t b = ctx_->degree_begin(d);
  return kernels::active().abs_sum(c_.data() + b, ctx_->degree_begin(d + 1) - b);
}

TruncatedPoly& TruncatedPoly::operator+=(const TruncatedPoly& rhs) {
  require_same(rhs);
  kernels::active().add(c_.data(), rhs.c_.data(), c_.data(), c_.size());
  return *this;
}

TruncatedPoly& TruncatedPoly::operator-=(const TruncatedPoly& rhs) {
  require_same(rhs);
  kernels::active().sub(c_.data(), rhs.c_.data(), c_.data(), c_.size());
  return *this;
}

TruncatedPoly& TruncatedPoly::operator*=(double rhs) {
  kernels::active().scale(rhs, c_.data(), c_.data(), c_.size());
  return *this;
}

TruncatedPoly& TruncatedPoly::operator*=(const TruncatedPoly& rhs) {
  *this = multiply(*this, rhs);
  return *this;
}

TruncatedPoly& TruncatedPoly::add_scaled(double alpha, const TruncatedPoly& x) {
  require_same(x);
  kernels::active().axpy(alpha, x.c_.data(), c_.data(), c_.size());
  return *this;
}

TruncatedPoly multiply(const TruncatedPoly& a, const TruncatedPoly& b) {
  a.require_same(b);
  const auto& plan = a.ctx_->products();
  const std::size_t n = plan.lhs.size();
  thread_local std::vector<double> products;
  if (products.size() < n) products.resize(n);
  kernels::active().pair_products(a.c_.data(), b.c_.data(), plan.lhs.data(), plan.rhs.data(),
                                  products.data(), n);
  TruncatedPoly out(*a.ctx_);
  const std::size_t m = out.c_.size();
  for (std::size_t k = 0; k < m; ++k) {
    std::uint32_t p = plan.offsets[k];
    const std::uint32_t end = plan.offsets[k + 1];
    double s = products[p++];
    for (; p < end; ++p) s += products[p];
    out.c_[k] = s;
  }
  flush_tiny(out.c_);
  return out;
}

TruncatedPoly apply_series(const TruncatedPoly& x, std::span<const double> coeffs) {
  const DaContext& ctx = x.context();
  if (coeffs.empty() || coeffs.size() > static_cast<std::size_t>(ctx.order()) + 1)
    throw ArgumentError("apply_series: series length must be in [1, order + 1]");
  TruncatedPoly t = x;
  t.coefficients()[0] = 0.0;
  // Horner in the nilpotent part.
  TruncatedPoly result(ctx, coeffs.back());
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    result = multiply(result, t);
    result += coeffs[k];
  }
  return result;
}

namespace {

std::vector<double> series_buffer(const TruncatedPoly& x) {
  return std::vector<double>(static_cast<std::size_t>(x.context().order()) + 1, 0.0);
}

// Coefficients of (c + t)^p = sum_k binom(p, k) c^(p-k) t^k.
TruncatedPoly power_series(const TruncatedPoly& x, double p, double c0) {
  auto a = series_buffer(x);
  a[0] = c0;
  const double c = x.constant();
  for (std::size_t k = 1; k < a.size(); ++k)
    a[k] = a[k - 1] * (p - static_cast<double>(k - 1)) / (static_cast<double>(k) * c);
  return apply_series(x, a);
}

}  // namespace

TruncatedPoly sqrt(const TruncatedPoly& x) {
  const double c = x.constant();
  if (!(c > 0.0)) throw DomainError("sqrt: constant part must be > 0", c);
  return power_series(x, 0.5, std::sqrt(c));
}

TruncatedPoly reciprocal(const TruncatedPoly& x) {
  const double c = x.constant();
  if (c == 0.0 || !std::isfinite(c)) throw DomainError("reciprocal: constant part must be nonzero", c);
  auto a = series_buffer(x);
  a[0] = 1.0 / c;
  for (std::size_t k = 1; k < a.size(); ++k) a[k] = -a[k - 1] / c;
  return apply_series(x, a);
}

TruncatedPoly pow(const TruncatedPoly& x, double p) {
  const double c = x.constant();
  const bool integral = p == std::round(p);
  if (c == 0.0 ? p < 0.0 || !integral : (c < 0.0 && !integral))
    throw DomainError("pow: constant part outside domain", c);
  if (integral && p >= 0.0) {
    // Repeated multiplication stays exact for a zero constant part.
    TruncatedPoly result(x.context(), 1.0);
    for (int i = 0; i < static_cast<int>(p); ++i) result = multiply(result, x);
    return result;
  }
  return power_series(x, p, std::pow(c, p));
}

TruncatedPoly sin(const TruncatedPoly& x) {
  const double s = std::sin(x.constant()), co = std::cos(x.constant());
  auto a = series_buffer(x);
  const std::array<double, 4> cycle{s, co, -s, -co};
  double fact = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    a[k] = cycle[k % 4] / fact;
  }
  return apply_series(x, a);
}

TruncatedPoly cos(const TruncatedPoly& x) {
  const double s = std::sin(x.constant()), co = std::cos(x.constant());
  auto a = series_buffer(x);
  const std::array<double, 4> cycle{co, -s, -co, s};
  double fact = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    a[k] = cycle[k % 4] / fact;
  }
  return apply_series(x, a);
}

TruncatedPoly exp(const TruncatedPoly& x) {
  auto a = series_buffer(x);
  a[0] = std::exp(x.constant());
  for (std::size_t k = 1; k < a.size(); ++k) a[k] = a[k - 1] / static_cast<double>(k);
  return apply_series(x, a);
}

TruncatedPoly log(const TruncatedPoly& x) {
  const double c = x.constant();
  if (!(c > 0.0)) throw DomainError("log: constant part must be > 0", c);
  auto a = series_buffer(x);
  a[0] = std::log(c);
  double ck = 1.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    ck *= c;
    a[k] = (k % 2 == 1 ? 1.0 : -1.0) / (static_cast<double>(k) * ck);
  }
  return apply_series(x, a);
}

double evaluate(const TruncatedPoly& p, std::span<const double> point) {
  const DaContext& ctx = p.context();
  if (point.size() != static_cast<std::size_t>(ctx.num_vars()))
    throw ArgumentError("evaluate: point length does not match num_vars");
  const std::size_t m = ctx.size();
  thread_local std::vector<double> mono;
  mono.resize(m);
  mono[0] = 1.0;
  for (std::size_t k = 1; k < m; ++k) mono[k] = mono[ctx.parent(k)] * point[ctx.parent_var(k)];
  return kernels::active().dot(p.coefficients().data(), mono.data(), m);
}

Derivatives extract_derivatives(const TruncatedPoly& p, int nx, int nu) {
  const DaContext& ctx = p.context();
  if (nx < 0 || nu < 0 || nx + nu > ctx.num_vars())
    throw ArgumentError("extract_derivatives: variable split exceeds num_vars");
  if (ctx.order() < 2) throw CapabilityError("extract_derivatives: Hessian needs order >= 2");
  const auto c = p.coefficients();
  Derivatives d;
  d.value = c[0];
  d.gx.resize(nx);
  d.gu.resize(nu);
  for (int i = 0; i < nx; ++i) d.gx[i] = c[ctx.linear_index(i)];
  for (int j = 0; j < nu; ++j) d.gu[j] = c[ctx.linear_index(nx + j)];
  auto h = [&](int i, int j) {
    const double v = c[ctx.quadratic_index(i, j)];
    return i == j ? 2.0 * v : v;
  };
  d.hxx.resize(nx, nx);
  d.hxu.resize(nx, nu);
  d.huu.resize(nu, nu);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < nx; ++j) d.hxx(i, j) = h(i, j);
    for (int j = 0; j < nu; ++j) d.hxu(i, j) = h(i, nx + j);
  }
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nu; ++j) d.huu(i, j) = h(nx + i, nx + j);
  return d;
}

Eigen::VectorXd gradient(const TruncatedPoly& p) {
  const DaContext& ctx = p.context();
  Eigen::VectorXd g(ctx.num_vars());
  for (int i = 0; i < ctx.num_vars(); ++i) g[i] = p.coefficients()[ctx.linear_index(i)];
  return g;
}

Eigen::MatrixXd hessian(const TruncatedPoly& p) {
  const DaContext& ctx = p.context();
  if (ctx.order() < 2) throw CapabilityError("hessian: needs order >= 2");
  const int n = ctx.num_vars();
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = p.coefficients()[ctx.quadratic_index(i, j)];
      h(i, j) = i == j ? 2.0 * v : v;
    }
  return h;
}

}  // namespace polyddp::da
