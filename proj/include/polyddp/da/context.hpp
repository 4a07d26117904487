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
#ifndef POLYDDP_DA_CONTEXT_HPP
#define POLYDDP_DA_CONTEXT_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace polyddp::da {

class DaContext;

/// Exponent vector of a monomial, one entry per independent variable.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::uint8_t> exponents) : exps_(std::move(exponents)) {}
  MultiIndex(std::initializer_list<int> exponents);

  /// All-zero index of the given length (the constant monomial).
  static MultiIndex zeros(int num_vars) { return MultiIndex(std::vector<std::uint8_t>(num_vars, 0)); }

  int size() const { return static_cast<int>(exps_.size()); }
  int degree() const;
  std::uint8_t operator[](int i) const { return exps_[i]; }
  std::span<const std::uint8_t> exponents() const { return exps_; }
  std::string to_string() const;

  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<std::uint8_t> exps_;
};

/**
 * Immutable description of a truncated polynomial algebra: variable count,
 * truncation order, and the tables every polynomial operation indexes into.
 *
 * Monomials are stored in graded order (all degree-0, then degree-1, ...);
 * within a degree they are sorted lexicographically by exponents, descending,
 * so the linear monomial of variable i sits at index 1 + i.
 *
 * Contexts are interned: get() returns the same object for the same
 * (num_vars, order) for the lifetime of the process.
 */
class DaContext {
 public:
  static const DaContext& get(int num_vars, int order);

  DaContext(const DaContext&) = delete;
  DaContext& operator=(const DaContext&) = delete;

  int num_vars() const { return num_vars_; }
  int order() const { return order_; }
  std::size_t size() const { return degree_.size(); }

  int degree(std::size_t k) const { return degree_[k]; }
  /// First monomial of degree d; degree_begin(order + 1) == size().
  std::size_t degree_begin(int d) const { return degree_begin_[d]; }
  std::span<const std::uint8_t> exponents(std::size_t k) const {
    return {exponents_.data() + k * num_vars_, static_cast<std::size_t>(num_vars_)};
  }
  MultiIndex multi_index(std::size_t k) const;

  /// Position of a monomial; throws ArgumentError if it is not representable.
  std::size_t index_of(const MultiIndex& m) const;
  std::size_t linear_index(int var) const { return 1 + static_cast<std::size_t>(var); }
  /// Position of x_i * x_j (order >= 2 only).
  std::size_t quadratic_index(int i, int j) const { return quadratic_[i * num_vars_ + j]; }

  // Monomial k (k > 0) equals monomial parent(k) times variable parent_var(k).
  std::size_t parent(std::size_t k) const { return parent_[k]; }
  int parent_var(std::size_t k) const { return parent_var_[k]; }

  /**
   * Product plan of the truncated Cauchy product. The pairs (lhs[p], rhs[p])
   * for p in [offsets[k], offsets[k+1]) are every ordered pair of monomials
   * whose product is monomial k.
   */
  struct ProductPlan {
    std::vector<std::int32_t> lhs;
    std::vector<std::int32_t> rhs;
    std::vector<std::uint32_t> offsets;
  };
  const ProductPlan& products() const { return plan_; }

 private:
  DaContext(int num_vars, int order);
  std::uint64_t key(std::span<const std::uint8_t> exps) const;

  int num_vars_;
  int order_;
  std::vector<std::uint8_t> exponents_;
  std::vector<int> degree_;
  std::vector<std::size_t> degree_begin_;
  std::vector<std::size_t> parent_;
  std::vector<int> parent_var_;
  std::vector<std::size_t> quadratic_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
  ProductPlan plan_;
};

}  // namespace polyddp::da

#endif  // POLYDDP_DA_CONTEXT_HPP
