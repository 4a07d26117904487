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
#ifndef POLYDDP_DA_POLY_HPP
#define POLYDDP_DA_POLY_HPP

#include <cmath>
#include <concepts>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polyddp/da/context.hpp"

namespace polyddp::da {

/// Coefficients with magnitude below this are flushed to zero.
inline constexpr double kDropThreshold = 1e-300;

/**
 * Truncated multivariate Taylor polynomial.
 *
 * Coefficients are held densely in the context's monomial order; a zero
 * entry is an absent term. terms() gives the sparse view.
 */
class TruncatedPoly {
 public:
  TruncatedPoly() = default;
  explicit TruncatedPoly(const DaContext& ctx, double constant = 0.0);

  /// center + delta_index
  static TruncatedPoly variable(const DaContext& ctx, int index, double center);

  bool valid() const { return ctx_ != nullptr; }
  const DaContext& context() const { return *ctx_; }
  double constant() const { return c_[0]; }
  double coefficient(const MultiIndex& m) const { return c_[ctx_->index_of(m)]; }
  void set_coefficient(const MultiIndex& m, double value) { c_[ctx_->index_of(m)] = value; }
  std::span<const double> coefficients() const { return c_; }
  std::span<double> coefficients() { return c_; }
  /// Nonzero terms in monomial order.
  std::vector<std::pair<MultiIndex, double>> terms() const;
  /// Sum of |coefficients| of total degree d.
  double degree_abs_sum(int d) const;

  TruncatedPoly& operator+=(const TruncatedPoly& rhs);
  TruncatedPoly& operator-=(const TruncatedPoly& rhs);
  TruncatedPoly& operator*=(const TruncatedPoly& rhs);
  TruncatedPoly& operator+=(double rhs) { c_[0] += rhs; return *this; }
  TruncatedPoly& operator-=(double rhs) { c_[0] -= rhs; return *this; }
  TruncatedPoly& operator*=(double rhs);
  TruncatedPoly& operator/=(double rhs) { return *this *= 1.0 / rhs; }

  /// this += alpha * x
  TruncatedPoly& add_scaled(double alpha, const TruncatedPoly& x);

 private:
  friend TruncatedPoly multiply(const TruncatedPoly&, const TruncatedPoly&);
  void require_same(const TruncatedPoly& other) const;

  const DaContext* ctx_ = nullptr;
  std::vector<double> c_;
};

TruncatedPoly multiply(const TruncatedPoly& a, const TruncatedPoly& b);

inline TruncatedPoly operator+(TruncatedPoly a, const TruncatedPoly& b) { return a += b; }
inline TruncatedPoly operator+(const TruncatedPoly& a, TruncatedPoly&& b) { return b += a; }
inline TruncatedPoly operator+(TruncatedPoly a, double b) { return a += b; }
inline TruncatedPoly operator+(double a, TruncatedPoly b) { return b += a; }
inline TruncatedPoly operator-(TruncatedPoly a, const TruncatedPoly& b) { return a -= b; }
inline TruncatedPoly operator-(TruncatedPoly a, double b) { return a -= b; }
inline TruncatedPoly operator-(TruncatedPoly a) { return a *= -1.0; }
inline TruncatedPoly operator-(double a, TruncatedPoly b) {
  b *= -1.0;
  return b += a;
}
inline TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b) { return multiply(a, b); }
inline TruncatedPoly operator*(TruncatedPoly a, double b) { return a *= b; }
inline TruncatedPoly operator*(double a, TruncatedPoly b) { return b *= a; }
inline TruncatedPoly operator/(TruncatedPoly a, double b) { return a /= b; }

// Intrinsics: univariate Taylor series at the constant part composed with
// the nilpotent part. Domain violations throw DomainError.
TruncatedPoly sqrt(const TruncatedPoly& x);
TruncatedPoly reciprocal(const TruncatedPoly& x);
TruncatedPoly pow(const TruncatedPoly& x, double p);
TruncatedPoly sin(const TruncatedPoly& x);
TruncatedPoly cos(const TruncatedPoly& x);
TruncatedPoly exp(const TruncatedPoly& x);
TruncatedPoly log(const TruncatedPoly& x);
inline TruncatedPoly operator/(const TruncatedPoly& a, const TruncatedPoly& b) { return a * reciprocal(b); }
inline TruncatedPoly operator/(double a, const TruncatedPoly& b) { return reciprocal(b) * a; }

/// sum_k coeffs[k] * t^k with t the nilpotent part of x; coeffs.size() <= order + 1.
TruncatedPoly apply_series(const TruncatedPoly& x, std::span<const double> coeffs);

/// Value at displacement `point` (length num_vars).
double evaluate(const TruncatedPoly& p, std::span<const double> point);

/**
 * Derivatives of p with respect to an (x, u) split of the variables:
 * x = variables [0, nx), u = [nx, nx + nu).
 */
struct Derivatives {
  double value = 0.0;
  Eigen::VectorXd gx, gu;
  Eigen::MatrixXd hxx, hxu, huu;
};
Derivatives extract_derivatives(const TruncatedPoly& p, int nx, int nu);

/// Full gradient and Hessian over all variables.
Eigen::VectorXd gradient(const TruncatedPoly& p);
Eigen::MatrixXd hessian(const TruncatedPoly& p);

// Scalar helpers shared by code templated over double and TruncatedPoly.
template <std::floating_point F>
double value_of(F x) { return static_cast<double>(x); }
inline double value_of(const TruncatedPoly& x) { return x.constant(); }
template <std::floating_point F>
F reciprocal(F x) { return F(1) / x; }

}  // namespace polyddp::da

#endif  // POLYDDP_DA_POLY_HPP
